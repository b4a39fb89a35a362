"""Exact sparse linear algebra over the rationals.

One online row-echelon structure serves rank, kernel extraction and
preimage solving: every stored row remembers the combination of input
vectors it came from, so reducing a vector to zero hands back the witness
combination for free.  Vectors are dicts keyed by arbitrary comparable
column labels (monomials here); pivot choice always takes the minimal
label under the supplied ordering, which keeps every result deterministic.

A rank recomputation modulo a fixed large prime is provided as a cheap
independent cross-check of the rational elimination.
"""

from fractions import Fraction

ORACLE_PRIME = 2 ** 31 - 1


class SparseEchelon:
    def __init__(self, keyfunc=None):
        self.keyfunc = keyfunc if keyfunc is not None else (lambda c: c)
        self.rows = []  # (pivot, rowdict with rowdict[pivot] == 1, transform)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Reduce vec against the echelon.

        Returns (residual, combo): residual = vec - sum combo[tag] * input_tag
        restricted to the stored span, i.e. vec == residual + combination of
        the previously added vectors described by combo.
        """
        v = {c: Fraction(x) for c, x in vec.items() if x}
        combo = {}
        for pivot, row, tr in self.rows:
            x = v.get(pivot)
            if not x:
                continue
            for c, y in row.items():
                val = v.get(c, 0) - x * y
                if val:
                    v[c] = val
                else:
                    v.pop(c, None)
            for t, y in tr.items():
                val = combo.get(t, 0) + x * y
                if val:
                    combo[t] = val
                else:
                    combo.pop(t, None)
        return v, combo

    def add(self, vec, tag):
        """Insert vec; returns None if it enlarged the span.

        If vec was already in the span, returns the combination of earlier
        tags expressing it and stores nothing.
        """
        v, combo = self.reduce(vec)
        if not v:
            return combo
        pivot = min(v, key=self.keyfunc)
        p = v[pivot]
        row = {c: x / p for c, x in v.items()}
        tr = {t: -x / p for t, x in combo.items()}
        tr[tag] = tr.get(tag, 0) + Fraction(1, 1) / p
        self.rows.append((pivot, row, {t: x for t, x in tr.items() if x}))
        return None

    def solve(self, vec):
        """Express vec in the span of the added vectors.

        Returns the combination dict, or None if vec lies outside the span.
        """
        v, combo = self.reduce(vec)
        if v:
            return None
        return combo


def rank_mod_p(columns, p=ORACLE_PRIME):
    """Rank of a list of dict-vectors over the field of p elements."""
    rows = []  # (pivot, rowdict) with entries in [1, p)
    rank = 0
    for col in columns:
        v = {}
        for c, x in col.items():
            x = Fraction(x)
            num, den = x.numerator % p, x.denominator % p
            if den == 0:
                raise ArithmeticError("denominator divisible by the oracle prime")
            val = num * pow(den, -1, p) % p
            if val:
                v[c] = val
        for pivot, row in rows:
            x = v.get(pivot)
            if not x:
                continue
            for c, y in row.items():
                val = (v.get(c, 0) - x * y) % p
                if val:
                    v[c] = val
                else:
                    v.pop(c, None)
        if v:
            pivot = min(v)
            inv = pow(v[pivot], -1, p)
            rows.append((pivot, {c: x * inv % p for c, x in v.items()}))
            rank += 1
    return rank
