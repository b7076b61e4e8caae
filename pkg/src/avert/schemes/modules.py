"""Simple modules over F_ell[G] for small finite groups.

The group first gets its ell-core divided out (a simple module cannot see a
normal ell-subgroup: its fixed space would be a proper submodule), then the
regular module of the quotient is split into composition factors by spinning
vectors.  Simplicity certificates spin every nonzero vector when the space
is small enough to exhaust and fall back to seeded random trials beyond
that; the acceptance cases are all exhaustive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .groups import FiniteGroup, ell_core, quotient_group


@dataclass
class GaloisModule:
    group: FiniteGroup
    ell: int
    dimension: int
    action: list[list[list[int]]]  # matrix per group element index

    def act(self, g: int, vec: tuple[int, ...]) -> tuple[int, ...]:
        mat = self.action[g]
        p = self.ell
        return tuple(
            sum(mat[i][j] * vec[j] for j in range(self.dimension)) % p
            for i in range(self.dimension)
        )

    def check_homomorphism(self) -> bool:
        g = self.group
        p = self.ell
        d = self.dimension
        for a in range(g.n):
            for b in range(g.n):
                ab = g.mul(a, b)
                prod = _mat_mul_mod(self.action[a], self.action[b], p)
                if prod != self.action[ab]:
                    return False
        return True


def _mat_mul_mod(a, b, p):
    n = len(a)
    return [
        [sum(a[i][t] * b[t][j] for t in range(n)) % p for j in range(n)] for i in range(n)
    ]


def regular_module(group: FiniteGroup, ell: int) -> GaloisModule:
    n = group.n
    action = []
    for g in range(n):
        mat = [[0] * n for _ in range(n)]
        for x in range(n):
            mat[group.mul(g, x)][x] = 1
        action.append(mat)
    return GaloisModule(group, ell, n, action)


def _spin(module: GaloisModule, vec) -> list[tuple[int, ...]]:
    """Basis of the submodule generated by vec."""
    p = module.ell
    basis: list[tuple[int, ...]] = []

    def reduce_against(v, basis):
        v = list(v)
        for b, piv in basis:
            if v[piv] != 0:
                f = v[piv] * pow(b[piv], -1, p) % p
                v = [(vi - f * bi) % p for vi, bi in zip(v, b)]
        return tuple(v)

    pivots: list[tuple[tuple[int, ...], int]] = []
    frontier = [tuple(vec)]
    while frontier:
        v = frontier.pop()
        v = reduce_against(v, pivots)
        if all(x == 0 for x in v):
            continue
        piv = next(i for i, x in enumerate(v) if x != 0)
        pivots.append((v, piv))
        for g in range(module.group.n):
            frontier.append(module.act(g, v))
    return [b for b, _ in pivots]


def _restrict_to_subspace(module: GaloisModule, basis):
    """The action on the subspace spanned by `basis` (coordinates on it)."""
    p = module.ell
    d = len(basis)
    action = []
    for g in range(module.group.n):
        mat = []
        for b in basis:
            img = module.act(g, b)
            coords = _solve_in_span(basis, img, p)
            mat.append(coords)
        # columns are images of basis vectors
        action.append([[mat[j][i] for j in range(d)] for i in range(d)])
    return GaloisModule(module.group, p, d, action)


def _quotient_module(module: GaloisModule, basis):
    """Action on V/span(basis) via a complement of coordinates."""
    p = module.ell
    d = module.dimension
    sub = [list(b) for b in basis]
    pivots = []
    reduced = []
    for v in sub:
        v = v[:]
        for b, piv in zip(reduced, pivots):
            if v[piv]:
                f = v[piv] * pow(b[piv], -1, p) % p
                v = [(vi - f * bi) % p for vi, bi in zip(v, b)]
        if any(v):
            piv = next(i for i, x in enumerate(v) if x)
            inv = pow(v[piv], -1, p)
            v = [x * inv % p for x in v]
            reduced.append(v)
            pivots.append(piv)
    free = [i for i in range(d) if i not in pivots]

    def project(vec):
        v = list(vec)
        for b, piv in zip(reduced, pivots):
            if v[piv]:
                f = v[piv]
                v = [(vi - f * bi) % p for vi, bi in zip(v, b)]
        return tuple(v[i] for i in free)

    def lift(coords):
        v = [0] * d
        for c, i in zip(coords, free):
            v[i] = c
        return tuple(v)

    action = []
    for g in range(module.group.n):
        cols = [project(module.act(g, lift(_unit(len(free), j)))) for j in range(len(free))]
        action.append([[cols[j][i] for j in range(len(free))] for i in range(len(free))])
    return GaloisModule(module.group, p, len(free), action)


def _unit(n, j):
    return tuple(1 if i == j else 0 for i in range(n))


def _solve_in_span(basis, target, p):
    d = len(basis)
    width = len(target)
    rows = [list(b) + [0] * d for b in basis]
    for i in range(d):
        rows[i][width + i] = 1
    # gaussian elimination carrying the bookkeeping columns
    mat = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        piv = None
        for i in range(r, d):
            if mat[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(d):
            if i != r and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    coeffs = [0] * d
    t = list(target)
    for row, c in zip(mat, pivots):
        if t[c]:
            f = t[c]
            t = [(a - f * b) % p for a, b in zip(t, row[:width])]
            for j in range(d):
                coeffs[j] = (coeffs[j] + f * row[width + j]) % p
    if any(t):
        raise ArithmeticError("vector not in span")
    return coeffs


def find_proper_submodule(module: GaloisModule, seed: int = 0, trials: int = 100):
    """A basis of a proper nonzero submodule, or None.

    Exhausts all nonzero vectors when ell^dim <= 2^16 (a genuine proof of
    simplicity); otherwise runs seeded random spins, which is the recorded
    100-trial certificate.
    """
    d = module.dimension
    p = module.ell
    if d == 0:
        return None
    if p**d <= 1 << 16:
        from itertools import product

        for vec in product(range(p), repeat=d):
            if not any(vec):
                continue
            basis = _spin(module, vec)
            if 0 < len(basis) < d:
                return basis
        return None
    rng = random.Random(seed)
    for _ in range(trials):
        vec = tuple(rng.randrange(p) for _ in range(d))
        if not any(vec):
            continue
        basis = _spin(module, vec)
        if 0 < len(basis) < d:
            return basis
    return None


def composition_factors(module: GaloisModule, seed: int = 0):
    """Composition factors (as modules), smallest dimension first."""
    out = []
    stack = [module]
    while stack:
        m = stack.pop()
        if m.dimension == 0:
            continue
        sub = find_proper_submodule(m, seed)
        if sub is None:
            out.append(m)
            continue
        stack.append(_restrict_to_subspace(m, sub))
        stack.append(_quotient_module(m, sub))
    out.sort(key=lambda m: m.dimension)
    return out


def modules_isomorphic(m1: GaloisModule, m2: GaloisModule) -> bool:
    """For simple modules: nonzero equivariant map exists iff isomorphic."""
    if m1.dimension != m2.dimension or m1.ell != m2.ell:
        return False
    p = m1.ell
    d = m1.dimension
    if d == 0:
        return True
    # solve X with A2_g X = X A1_g for all g; unknowns d*d
    rows = []
    for g in range(m1.group.n):
        a1 = m1.action[g]
        a2 = m2.action[g]
        for i in range(d):
            for j in range(d):
                row = [0] * (d * d)
                for t in range(d):
                    row[t * d + j] = (row[t * d + j] + a2[i][t]) % p
                    row[i * d + t] = (row[i * d + t] - a1[t][j]) % p
                rows.append(row)
    from ..exactalg.intmatrix import kernel_mod_p

    ker = kernel_mod_p(rows, p)
    for v in ker:
        if any(v):
            return True
    return False


def simple_modules(group: FiniteGroup, ell: int, seed: int = 0):
    """All simple F_ell[G]-modules up to isomorphism, with multiplicities in
    the regular module of G/O_ell(G).

    Returns (modules, multiplicities, core_order).  The dimension count
    sum(dim * mult) = |G/O_ell(G)| is asserted.
    """
    core = ell_core(group, ell)
    q = quotient_group(group, core)
    if q.n > 64:
        raise ValueError("group quotient too large for module enumeration")
    reg = regular_module(q, ell)
    factors = composition_factors(reg, seed)
    reps: list[GaloisModule] = []
    mults: list[int] = []
    for f in factors:
        for i, r in enumerate(reps):
            if modules_isomorphic(f, r):
                mults[i] += 1
                break
        else:
            reps.append(f)
            mults.append(1)
    assert sum(m.dimension * k for m, k in zip(reps, mults)) == q.n
    order = sorted(range(len(reps)), key=lambda i: reps[i].dimension)
    return [reps[i] for i in order], [mults[i] for i in order], len(core)
