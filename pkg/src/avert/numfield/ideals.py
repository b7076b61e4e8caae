"""Integral ideals as HNF lattices on the integral basis, and prime
factorization of rational primes.

Factorization uses the Dedekind/Kummer recipe whenever p does not divide the
index of the power basis and falls back to splitting the finite algebra
O/pO (radical quotient, idempotent decomposition) when it does.  The
fallback is slower but always succeeds at degree <= 8.
"""

from __future__ import annotations

from ..exactalg.intmatrix import hnf_rows, kernel_mod_p, solve_mod_p
from ..exactalg.poly import FpPoly, QPoly, factor_mod_p
from .field import FieldElement, NumberField


class Ideal:
    """Nonzero integral ideal, canonical HNF basis (rows, upper triangular)."""

    __slots__ = ("field", "hnf", "_norm")

    def __init__(self, field: NumberField, hnf_basis):
        self.field = field
        self.hnf = tuple(tuple(int(x) for x in row) for row in hnf_basis)
        if len(self.hnf) != field.degree:
            raise ValueError("ideal lattice must have full rank")
        self._norm = None

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_generators(field: NumberField, gens, extra_rational: int | None = None) -> "Ideal":
        """Ideal generated by field elements (as an O-module)."""
        n = field.degree
        rows = []
        basis_vecs = [
            FieldElement(field, [1 if i == j else 0 for i in range(n)]) for j in range(n)
        ]
        for g in gens:
            g = field.coerce(g)
            if not g.is_integral():
                raise ValueError("ideal generators must be integral")
            for b in basis_vecs:
                rows.append([int(c) for c in (g * b).coords])
        if extra_rational is not None:
            for j in range(n):
                rows.append([extra_rational if i == j else 0 for i in range(n)])
        h = hnf_rows(rows)
        if len(h) != n:
            raise ValueError("zero ideal")
        return Ideal(field, h)

    @staticmethod
    def whole_ring(field: NumberField) -> "Ideal":
        return Ideal.from_generators(field, [field.one()])

    @staticmethod
    def principal(field: NumberField, g) -> "Ideal":
        return Ideal.from_generators(field, [g])

    # -- basic ops --------------------------------------------------------------

    def norm(self) -> int:
        if self._norm is None:
            n = 1
            for i in range(self.field.degree):
                n *= self.hnf[i][i]
            self._norm = n
        return self._norm

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.field is other.field and self.hnf == other.hnf

    def __hash__(self):
        return hash(self.hnf)

    def __lt__(self, other):
        return (self.norm(), self.hnf) < (other.norm(), other.hnf)

    def __mul__(self, other: "Ideal") -> "Ideal":
        field = self.field
        rows = []
        gens_a = [FieldElement(field, row) for row in self.hnf]
        gens_b = [FieldElement(field, row) for row in other.hnf]
        for a in gens_a:
            for b in gens_b:
                rows.append([int(c) for c in (a * b).coords])
        return Ideal(field, hnf_rows(rows))

    def __pow__(self, e: int) -> "Ideal":
        if e < 0:
            raise ValueError("only nonnegative ideal powers supported")
        result = Ideal.whole_ring(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.field, hnf_rows([list(r) for r in self.hnf + other.hnf]))

    def contains(self, x: FieldElement) -> bool:
        if not x.is_integral():
            return False
        return all(v == 0 for v in self.reduce(tuple(int(c) for c in x.coords)))

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(all(v == 0 for v in self.reduce(row)) for row in other.hnf)

    def reduce(self, coords) -> tuple[int, ...]:
        """Canonical residue of an integer coordinate vector modulo the
        lattice (ascending reduction against the triangular HNF rows)."""
        v = list(coords)
        n = self.field.degree
        for i in range(n):
            piv = self.hnf[i][i]
            q = v[i] // piv
            if q:
                row = self.hnf[i]
                for k in range(i, n):
                    v[k] -= q * row[k]
        return tuple(v)

    def residues(self):
        """All canonical residues (norm() many) in deterministic order."""
        n = self.field.degree
        diag = [self.hnf[i][i] for i in range(n)]
        total = self.norm()
        idx = [0] * n
        for _ in range(total):
            yield self.reduce(tuple(idx))
            for i in range(n - 1, -1, -1):
                idx[i] += 1
                if idx[i] < diag[i]:
                    break
                idx[i] = 0

    def divides(self, other: "Ideal") -> bool:
        return self.contains_ideal(other)

    def valuation(self, other: "Ideal") -> int:
        """Largest k with `other` contained in self**k (self must be prime)."""
        k = 0
        power = Ideal.whole_ring(self.field)
        while True:
            power = power * self
            if not power.contains_ideal(other):
                return k
            k += 1
            if k > 200:
                raise ArithmeticError("valuation runaway")

    def __repr__(self):
        return f"Ideal(norm={self.norm()}, hnf={[list(r) for r in self.hnf]})"


class PrimeIdeal(Ideal):
    __slots__ = ("p", "e", "f")

    def __init__(self, field, hnf_basis, p: int, e: int, f: int):
        super().__init__(field, hnf_basis)
        self.p = p
        self.e = e
        self.f = f

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, e={self.e}, f={self.f})"


def factor_prime(field: NumberField, p: int) -> list[PrimeIdeal]:
    """Primes of O above p with ramification and residue degrees.

    Output sorted by HNF basis, so deterministic.  Postconditions checked:
    sum of e*f equals the degree and each norm is p^f.
    """
    n = field.degree
    if field.index % p != 0:
        primes = _factor_dedekind(field, p)
    else:
        primes = _factor_saturation(field, p)
    primes.sort(key=lambda q: q.hnf)
    assert sum(q.e * q.f for q in primes) == n, "efg bookkeeping failed"
    for q in primes:
        assert q.norm() == p**q.f, "prime norm check failed"
    return primes


def _factor_dedekind(field: NumberField, p: int) -> list[PrimeIdeal]:
    fp = FpPoly([int(c) % p for c in field.poly.coeffs], p)
    out = []
    for g, e in factor_mod_p(fp):
        glift = QPoly([int(c) for c in g.coeffs])
        elem = field.from_power_poly(glift)
        ideal = Ideal.from_generators(field, [elem], extra_rational=p)
        out.append(PrimeIdeal(field, ideal.hnf, p, e, g.degree))
    return out


class _ModPAlgebra:
    """O/pO with multiplication from the field's integral-basis table."""

    def __init__(self, field: NumberField, p: int):
        self.field = field
        self.p = p
        self.n = field.degree
        self.table = field.mult_table
        self.one = tuple(int(c) % p for c in field.one().coords)

    def mul(self, a, b):
        n, p, table = self.n, self.p, self.table
        out = [0] * n
        for i in range(n):
            ai = a[i] % p
            if not ai:
                continue
            ti = table[i]
            for j in range(n):
                bj = b[j] % p
                if not bj:
                    continue
                c = ai * bj
                row = ti[j]
                for k in range(n):
                    out[k] = (out[k] + c * row[k]) % p
        return tuple(out)

    def pow(self, v, e):
        result = self.one
        base = v
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def radical_rows(self):
        """Basis rows of the nilradical (left kernel of Frobenius^m)."""
        n, p = self.n, self.p
        frob = [list(self.pow(tuple(1 if k == i else 0 for k in range(n)), p)) for i in range(n)]
        m = 1
        q = p
        while q < n:
            q *= p
            m += 1
        fm = frob
        for _ in range(m - 1):
            fm = [
                [sum(fm[i][t] * frob[t][k] for t in range(n)) % p for k in range(n)]
                for i in range(n)
            ]
        return [list(v) for v in kernel_mod_p([list(col) for col in zip(*fm)], p)]


def _factor_saturation(field: NumberField, p: int) -> list[PrimeIdeal]:
    alg = _ModPAlgebra(field, p)
    n = field.degree
    rad = alg.radical_rows()
    comp_lift = _complete_basis_mod_p(rad, n, p)  # lifts of a basis of B
    dim_b = len(comp_lift)
    full_rows = comp_lift + rad  # basis of O/pO adapted to B + rad

    def to_b(v):
        sol = solve_mod_p([list(col) for col in zip(*full_rows)], list(v), p)
        if sol is None:
            raise ArithmeticError("projection to etale quotient failed")
        return tuple(sol[:dim_b])

    def b_lift(coords):
        v = [0] * n
        for c, row in zip(coords, comp_lift):
            if c:
                for k in range(n):
                    v[k] = (v[k] + c * row[k]) % p
        return tuple(v)

    def b_mul(a, b):
        return to_b(alg.mul(b_lift(a), b_lift(b)))

    one_b = to_b(alg.one)
    components = _split_etale(dim_b, b_mul, one_b, p)

    out = []
    p_ideal = Ideal.from_generators(field, [field.coerce(p)])
    for comp in components:
        # projection matrix O/pO -> comp coordinates
        others: list[list[int]] = []
        for other in components:
            if other is not comp:
                others.extend(other)
        change = [list(r) for r in comp] + others  # basis of B
        proj_rows = []
        for i in range(n):
            bc = to_b(tuple(1 if k == i else 0 for k in range(n)))
            sol = solve_mod_p([list(col) for col in zip(*change)], list(bc), p)
            proj_rows.append(sol[: len(comp)])
        ker = kernel_mod_p([list(col) for col in zip(*proj_rows)], p)
        rows = [[p if i == k else 0 for k in range(n)] for i in range(n)]
        rows += [list(v) for v in ker]
        h = hnf_rows(rows)
        prime = PrimeIdeal(field, h, p, 1, len(comp))
        e = prime.valuation(p_ideal)
        out.append(PrimeIdeal(field, h, p, e, len(comp)))
    return out


def _split_etale(dim, mul, one, p):
    """Decompose an etale commutative F_p-algebra into field components.

    Components travel with their own identity element (the primitive
    idempotent), since minimal polynomials inside a component are relative to
    that identity, not the global 1.  Components are returned as lists of
    B-coordinate rows, sorted for determinism.
    """

    def component_minpoly(ident, elem, d):
        rows = [list(ident)]
        power = tuple(ident)
        for deg in range(1, d + 1):
            power = mul(power, elem)
            rows.append(list(power))
            m = [[rows[i][j] for i in range(deg)] for j in range(len(one))]
            rhs = [(-rows[deg][j]) % p for j in range(len(one))]
            sol = solve_mod_p(m, rhs, p)
            if sol is not None:
                return FpPoly(list(sol) + [1], p)
        raise ArithmeticError("component minimal polynomial not found")

    def eval_poly(poly: FpPoly, elem, ident):
        result = tuple(0 for _ in one)
        for c in reversed(poly.coeffs):
            result = mul(result, elem)
            result = tuple((result[t] + c * ident[t]) % p for t in range(len(one)))
        return result

    whole = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    stack = [(whole, tuple(one))]
    done = []
    while stack:
        comp, ident = stack.pop()
        d = len(comp)
        if d == 1:
            done.append([list(r) for r in comp])
            continue
        unit_vecs = [[1 if k == i else 0 for k in range(d)] for i in range(d)]
        candidates = unit_vecs + [
            [(1 if k in (i, j) else 0) for k in range(d)]
            for i in range(d)
            for j in range(i + 1, d)
        ]
        split = None
        is_field = False
        for cand in candidates:
            elem = _combine(comp, cand, p)
            mp = component_minpoly(ident, elem, d)
            fac = factor_mod_p(mp)
            if len(fac) >= 2:
                g1 = fac[0][0]
                rest = mp // g1
                g, _, v = _fp_xgcd(g1, rest)
                inv = pow(g.coeffs[0], -1, p)
                idem = eval_poly(rest * v * FpPoly([inv], p), elem, ident)
                one_minus = tuple((ident[t] - idem[t]) % p for t in range(len(one)))
                rows1 = [list(mul(idem, _combine(comp, e_i, p))) for e_i in unit_vecs]
                rows2 = [list(mul(one_minus, _combine(comp, e_i, p))) for e_i in unit_vecs]
                b1 = _row_space_basis(rows1, p)
                b2 = _row_space_basis(rows2, p)
                if len(b1) + len(b2) != d or not b1 or not b2:
                    raise ArithmeticError("idempotent split failed")
                split = [(b1, idem), (b2, one_minus)]
                break
            if mp.degree == d:
                is_field = True
                break
        if split is not None:
            stack.extend(split)
        elif is_field:
            done.append([list(r) for r in comp])
        else:
            raise ArithmeticError("unable to certify field component (no primitive element found)")
    done.sort()
    return done


def _combine(rows, coords, p):
    width = len(rows[0])
    v = [0] * width
    for c, row in zip(coords, rows):
        if c:
            for k in range(width):
                v[k] = (v[k] + c * row[k]) % p
    return tuple(v)


def _complete_basis_mod_p(rows: list[list[int]], n: int, p: int) -> list[list[int]]:
    basis = [r[:] for r in rows]
    out = []
    for i in range(n):
        cand = [1 if k == i else 0 for k in range(n)]
        if _in_span_mod_p(basis, cand, p):
            continue
        basis.append(cand)
        out.append(cand)
    return out


def _in_span_mod_p(rows: list[list[int]], v: list[int], p: int) -> bool:
    if not rows:
        return all(x % p == 0 for x in v)
    m = [list(col) for col in zip(*rows)]
    return solve_mod_p(m, v, p) is not None


def _row_space_basis(rows, p):
    m = [[x % p for x in row] for row in rows]
    out = []
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(m[i][j] - f * m[r][j]) % p for j in range(cols)]
        r += 1
    return [row for row in m[:r]]


def _fp_xgcd(a: FpPoly, b: FpPoly):
    p = a.p
    r0, r1 = a, b
    s0, s1 = FpPoly([1], p), FpPoly([], p)
    t0, t1 = FpPoly([], p), FpPoly([1], p)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0
