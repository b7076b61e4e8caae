"""Structure computation for finite abelian groups given by multiplication.

Used for (O/m)*, ray class quotients, abelianizations, and the brute-force
(Z/n)* oracles.  Elements are any hashable values; the algorithm builds a
generator/relation presentation by cyclic extension steps, then Smith-reduces
it to canonical coordinates with discrete logarithms.
"""

from __future__ import annotations

from ..exactalg.intmatrix import smith_normal_form_with_transform


class AbelianStructure:
    """Invariants d1 | d2 | ... (1s dropped) with a discrete-log map onto
    prod Z/d_i."""

    def __init__(self, elements, mul, identity):
        elems = sorted(elements)
        gens: list = []
        rel_rows: list[list[int]] = []
        dlog = {identity: ()}
        for u in elems:
            if u in dlog:
                continue
            k = 1
            p = u
            while p not in dlog:
                p = mul(p, u)
                k += 1
            r = len(gens) + 1
            dlog = {h: v + (0,) * (r - 1 - len(v)) for h, v in dlog.items()}
            rel = dlog[p] if p in dlog else ()
            rel = tuple(rel) + (0,) * (r - 1 - len(rel))
            rel_rows = [row + [0] * (r - len(row)) for row in rel_rows]
            rel_rows.append([-rel[i] for i in range(r - 1)] + [k])
            gens.append(u)
            new = dict(dlog)
            pw = identity
            for j in range(1, k):
                pw = mul(pw, u)
                for h, vec in dlog.items():
                    new[mul(h, pw)] = vec[: r - 1] + (j,)
            dlog = new
            if len(dlog) == len(elems):
                break
        if len(dlog) != len(elems):
            raise ValueError("input is not closed under multiplication")
        self.order = len(elems)
        self.gens = gens
        self._dlog_raw = dlog
        r = len(gens)
        if r == 0:
            self.invariants = ()
            self._v = []
            self._diag = []
            self.canonical_positions = ()
            return
        d, u, v = smith_normal_form_with_transform(rel_rows)
        diag = [d[i][i] for i in range(r)]
        self._v = v
        self._diag = diag
        self.canonical_positions = tuple(i for i in range(r) if diag[i] != 1)
        self.invariants = tuple(diag[i] for i in self.canonical_positions)

    def dlog(self, element) -> tuple[int, ...]:
        """Coordinates in prod Z/d_i over the kept invariants."""
        raw = self._dlog_raw[element]
        raw = tuple(raw) + (0,) * (len(self.gens) - len(raw))
        w = [
            sum(raw[i] * self._v[i][j] for i in range(len(self.gens)))
            for j in range(len(self.gens))
        ]
        return tuple(w[i] % self._diag[i] for i in self.canonical_positions)

    def elements(self):
        return self._dlog_raw.keys()

    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def is_cyclic(self) -> bool:
        return len(self.invariants) <= 1

    def characters(self, order_divides: int | None = None):
        """All characters as exponent tuples c against the invariants; the
        character maps x to sum c_i*dlog_i(x)/d_i mod 1.  Optionally restrict
        to characters whose order divides order_divides."""
        from itertools import product

        inv = self.invariants
        for c in product(*[range(d) for d in inv]):
            if order_divides is not None:
                ok = True
                from math import gcd

                for ci, di in zip(c, inv):
                    o = di // gcd(ci, di) if ci else 1
                    if order_divides % o != 0:
                        ok = False
                        break
                if not ok:
                    continue
            yield c

    def char_order(self, c: tuple[int, ...]) -> int:
        from math import gcd

        o = 1
        for ci, di in zip(c, self.invariants):
            oi = di // gcd(ci, di) if ci else 1
            o = o * oi // gcd(o, oi)
        return o

    def char_value_num_den(self, c: tuple[int, ...], coords: tuple[int, ...]):
        """Character value as an exact rational in Q/Z (num, den)."""
        from fractions import Fraction

        acc = Fraction(0)
        for ci, di, xi in zip(c, self.invariants, coords):
            acc += Fraction(ci * xi, di)
        acc -= int(acc)
        if acc < 0:
            acc += 1
        return acc

    def char_trivial_on(self, c: tuple[int, ...], elements) -> bool:
        return all(self.char_value_num_den(c, self.dlog(x)) == 0 for x in elements)


def subgroup_closure(gens, mul, identity) -> set:
    out = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = mul(h, g)
                if x not in out:
                    out.add(x)
                    nxt.append(x)
        frontier = nxt
    return out


class QuotientGroup:
    """Quotient of a finite abelian group (given by element set + mul) by the
    subgroup generated by `rel_gens`, with canonical coset representatives."""

    def __init__(self, elements, mul, identity, rel_gens):
        sub = subgroup_closure(rel_gens, mul, identity)
        coset_of = {}
        reps = []
        for u in sorted(elements):
            if u in coset_of:
                continue
            reps.append(u)
            for h in sub:
                coset_of[mul(u, h)] = u
        self.subgroup = sub
        self.coset_of = coset_of
        self.reps = reps
        self._mul = mul
        self.identity_rep = coset_of[identity]
        self.structure = AbelianStructure(
            reps, lambda a, b: coset_of[mul(a, b)], self.identity_rep
        )

    def project(self, element):
        return self.coset_of[element]

    def dlog(self, element):
        return self.structure.dlog(self.coset_of[element])
