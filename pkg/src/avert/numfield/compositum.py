"""Composita and exact recognition of algebraic elements inside a field.

The numeric layer (mpmath) only ever proposes candidates; every candidate is
verified by exact polynomial arithmetic before being returned, so the
functions here are Las Vegas: possibly slow, never wrong.  Nonexistence
claims (no square root, no embedding) are certified by exhausting the finite
candidate lists at a precision where rounding to the nearest integer
coordinate is guaranteed to recover any true solution.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import mpmath

from ..exactalg.poly import QPoly, resultant_bivariate
from .field import FieldElement, NumberField, make_field
from .roots import eval_mp


class CompositumError(ValueError):
    pass


def _binomial_expand(f: QPoly, k: int) -> list[QPoly]:
    """f(x - k*y) as a list over powers of y of polynomials in x."""
    n = f.degree
    out = [QPoly([]) for _ in range(n + 1)]
    # (x - k y)^m = sum_j C(m,j) x^(m-j) (-k)^j y^j
    from math import comb

    for m, c in enumerate(f.coeffs):
        if c == 0:
            continue
        for j in range(m + 1):
            coeff = c * comb(m, j) * Fraction(-k) ** j
            xpoly = [Fraction(0)] * (m - j) + [coeff]
            out[j] = out[j] + QPoly(xpoly)
    return out


def compositum(f1_field: NumberField, f2_field: NumberField, k_max: int = 20):
    """Compositum of two absolute fields.

    Returns (field, embed1, embed2) where embed_i maps the generator of
    field i to an element of the compositum, verified exactly.  The primitive
    element is theta1 + k*theta2 for the smallest k in 1..k_max that works.
    """
    f1, f2 = f1_field.poly, f2_field.poly
    if f1_field.degree == 1:
        return f2_field, _rational_embedding(f1_field, f2_field), _identity_embedding(f2_field)
    if f2_field.degree == 1:
        return f1_field, _identity_embedding(f1_field), _rational_embedding(f2_field, f1_field)
    for k in range(1, k_max + 1):
        try:
            return _compositum_attempt(f1_field, f2_field, k)
        except CompositumError:
            continue
    raise CompositumError(f"no primitive element of the form a + k*b for k <= {k_max}")


def _identity_embedding(field: NumberField):
    gen = field.gen()

    def embed(elem_or_poly):
        if isinstance(elem_or_poly, FieldElement):
            return field.element(elem_or_poly.coords)
        return field.from_power_poly(elem_or_poly)

    embed.generator_image = gen
    return embed


def _rational_embedding(src: NumberField, dst: NumberField):
    # src is Q with generator a rational root of its defining polynomial
    root = Fraction(-src.poly.coeffs[0], src.poly.coeffs[1])
    img = dst.coerce(root)

    def embed(elem_or_poly):
        if isinstance(elem_or_poly, FieldElement):
            g = elem_or_poly.to_power_poly()
        else:
            g = elem_or_poly
        return dst.coerce(g.eval(root))

    embed.generator_image = img
    return embed


def _compositum_attempt(F1: NumberField, F2: NumberField, k: int):
    f1, f2 = F1.poly, F2.poly
    coeffs_y = _binomial_expand(f1, k)
    R = resultant_bivariate(coeffs_y, f2)
    R = R.monic()
    Rsf = R.squarefree_part()
    if Rsf.degree != R.degree:
        raise CompositumError("resultant not squarefree (colliding root sums)")
    dps = 50
    for _ in range(6):
        with mpmath.workdps(dps):
            a1 = F1.roots(dps).centers[0]
            b1 = F2.roots(dps).centers[0]
            gamma = a1 + k * b1
            g = _minpoly_of_value(R, gamma, dps)
            if g is None:
                dps *= 2
                continue
            field = make_field(g)
            emb1 = _embedding_by_matching(F1, field, a1, dps)
            emb2 = _embedding_by_matching(F2, field, b1, dps)
            if emb1 is None or emb2 is None:
                dps *= 2
                continue
            return field, emb1, emb2
    raise CompositumError("numeric precision exhausted in compositum construction")


def _minpoly_of_value(R: QPoly, gamma, dps) -> QPoly | None:
    """The irreducible integer factor of squarefree R vanishing at gamma.

    Tries root subsets of ascending size that contain the root closest to
    gamma; a candidate is accepted only if it divides R exactly and is
    minimal, which forces irreducibility.
    """
    from .roots import CertifiedRoots

    roots = CertifiedRoots(R, dps)
    with mpmath.workdps(roots.dps):
        dists = [abs(z - gamma) for z in roots.centers]
        i0 = min(range(len(dists)), key=lambda i: dists[i])
        if dists[i0] > roots.radii[i0] + mpmath.mpf("1e-10"):
            return None
        others = [i for i in range(R.degree) if i != i0]
        for d in range(1, R.degree + 1):
            for combo in combinations(others, d - 1):
                idxs = (i0,) + combo
                coeffs = _subset_poly_mp(roots.centers, idxs)
                ints = []
                ok = True
                for c in coeffs:
                    ci = mpmath.nint(c.real)
                    if abs(c - ci) > 0.25:
                        ok = False
                        break
                    ints.append(int(ci))
                if not ok:
                    continue
                cand = QPoly(ints + [1])
                if R.divmod(cand)[1].is_zero():
                    return cand
    return None


def _subset_poly_mp(centers, combo):
    coeffs = [mpmath.mpc(1)]
    for idx in combo:
        z = centers[idx]
        coeffs = [mpmath.mpc(0)] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= z * coeffs[i + 1]
    return coeffs[:-1]


def _embedding_by_matching(src: NumberField, dst: NumberField, target_value, dps):
    """Embedding src -> dst sending the generator to the element of dst whose
    first-embedding value is target_value; exact verification."""
    img = find_root_in_field(src.poly, dst, approx=target_value, dps=dps)
    if img is None:
        return None

    def embed(elem_or_poly):
        if isinstance(elem_or_poly, FieldElement):
            g = elem_or_poly.to_power_poly()
        else:
            g = elem_or_poly
        acc = dst.zero()
        for c in reversed(g.coeffs):
            acc = acc * img + dst.coerce(c)
        return acc

    embed.generator_image = img
    return embed


def find_root_in_field(
    g: QPoly, field: NumberField, approx=None, dps: int = 50
) -> FieldElement | None:
    """An exact root of g in `field`, or None (certified if approx is None).

    With `approx` given, returns the root nearest that complex value at the
    field's first embedding.  Roots are reconstructed from embedding values
    by solving the linear system against the integral-basis embedding matrix
    and verified by exact evaluation.
    """
    n = field.degree
    for attempt in range(6):
        roots = field.roots(dps)
        with mpmath.workdps(roots.dps):
            groots = mpmath.polyroots(
                [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) for c in reversed(g.coeffs)],
                maxsteps=200,
                extraprec=2 * roots.dps,
            )
            if approx is not None:
                groots = sorted(groots, key=lambda z: abs(z - approx))
                candidates = groots[:1]
            else:
                candidates = list(groots)
            emb = [[eval_mp(field.basis_to_power(_unit_vec(n, i)), z) for i in range(n)] for z in roots.centers]
            m = mpmath.matrix(emb)
            for root_val in candidates:
                # the element's value at embedding 0 is root_val; at the other
                # embeddings it must be one of the conjugate root values: try
                # the assignment that solves to near-integers
                elem = _solve_assignments(field, m, g, groots, root_val, roots)
                if elem is not None:
                    # exact verification
                    acc = field.zero()
                    for c in reversed(g.coeffs):
                        acc = acc * elem + field.coerce(c)
                    if acc.is_zero():
                        return elem
        dps *= 2
    return None


def _unit_vec(n, i):
    return [1 if k == i else 0 for k in range(n)]


def _solve_assignments(field, emb_matrix, g, groots, root_val, roots):
    """Search assignments of g-roots to field embeddings consistent with
    conjugation, solve for integer coordinates, return a candidate element."""
    n = field.degree
    r1 = roots.r1
    # choose for each embedding a root of g; embedding 0 is pinned.
    # assignments must commute with complex conjugation of the field
    # embeddings (pairs are adjacent after the r1 real ones).
    near_real = [z for z in groots if abs(z.imag) < mpmath.mpf("1e-12")]
    slots: list[list] = []
    for idx in range(n):
        if idx == 0:
            slots.append([root_val])
        elif idx < r1:
            slots.append(list(near_real))  # real field embedding: real value
        elif (idx - r1) % 2 == 1:
            slots.append([None])  # conjugate of previous slot
        else:
            slots.append(list(groots))
    # depth-first over assignments with early linear solve
    out = [None]

    def dfs(i, chosen):
        if out[0] is not None:
            return
        if i == n:
            vec = mpmath.matrix(chosen)
            try:
                sol = mpmath.lu_solve(emb_matrix, vec)
            except ZeroDivisionError:
                return
            coords = []
            for v in sol:
                ci = mpmath.nint(v.real)
                if abs(v - ci) > 0.2:
                    return
                coords.append(int(ci))
            out[0] = field.element(coords)
            return
        opts = slots[i]
        if opts == [None]:
            opts = [mpmath.conj(chosen[-1])]
        for z in opts:
            dfs(i + 1, chosen + [z])
            if out[0] is not None:
                return

    dfs(0, [])
    return out[0]


def sqrt_in_field(x: FieldElement) -> FieldElement | None:
    """w with w*w = x, or None (certified complete search).

    If x is integral the square root is integral, so integer rounding of the
    embedding solve recovers it whenever it exists.
    """
    field = x.field
    if x.is_zero():
        return field.zero()
    # solve w^2 = x directly via assignments of +-sqrt at each embedding
    n = field.degree
    dps = 60
    for attempt in range(6):
        roots = field.roots(dps)
        with mpmath.workdps(roots.dps):
            vals = field.embedding_values(x, roots.dps)
            emb = [
                [eval_mp(field.basis_to_power(_unit_vec(n, i)), z) for i in range(n)]
                for z in roots.centers
            ]
            m = mpmath.matrix(emb)
            r1 = roots.r1
            choices: list[list] = []
            feasible = True
            for idx in range(n):
                v = vals[idx]
                if idx < r1:
                    if v.real < 0 and abs(v.imag) < mpmath.mpf("1e-30"):
                        feasible = False  # negative at a real place: no sqrt
                        break
                    s = mpmath.sqrt(v)
                    choices.append([s, -s])
                elif (idx - r1) % 2 == 1:
                    choices.append([None])
                else:
                    s = mpmath.sqrt(v)
                    choices.append([s, -s])
            if not feasible:
                return None
            found = [None]

            def dfs(i, chosen):
                if found[0] is not None:
                    return
                if i == n:
                    vec = mpmath.matrix(chosen)
                    try:
                        sol = mpmath.lu_solve(m, vec)
                    except ZeroDivisionError:
                        return
                    coords = []
                    denbound = 2 * field.basis_den
                    for v in sol:
                        q = _round_to_bounded_rational(v.real, denbound)
                        if q is None or abs(v - mpmath.mpf(q.numerator) / q.denominator) > mpmath.mpf("1e-6"):
                            return
                        coords.append(q)
                    cand = field.element(coords)
                    if (cand * cand - x).is_zero():
                        found[0] = cand
                    return
                opts = choices[i]
                if opts == [None]:
                    opts = [mpmath.conj(chosen[-1])]
                for z in opts:
                    dfs(i + 1, chosen + [z])
                    if found[0] is not None:
                        return

            dfs(0, [])
            if found[0] is not None:
                return found[0]
            # if x is integral, coordinates of w are integers; at high enough
            # precision failure of every sign pattern certifies nonexistence
            if x.is_integral() and dps >= 240:
                return None
        dps *= 2
    return None


def _round_to_bounded_rational(v, max_den: int) -> Fraction | None:
    # integer fast path (square roots of integral elements are integral)
    ni = mpmath.nint(v)
    if abs(v - ni) < mpmath.mpf("1e-8"):
        return Fraction(int(ni))
    cand = Fraction(str(v)).limit_denominator(max_den)
    err = abs(v - mpmath.mpf(cand.numerator) / cand.denominator)
    return cand if err < mpmath.mpf("1e-8") else None
