"""Finite groups as explicit element tables: cores, cyclicity, and the
extension divisibility lemma.

Groups come either from permutation generators or from multiplication-table
fixtures (the catalog of small p-groups ships as data).  Everything is
computed by direct enumeration; group orders stay at or below 10^4.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..classfield.abelian import AbelianStructure


class GroupError(ValueError):
    pass


class FiniteGroup:
    """Elements are 0..n-1 with a full multiplication table; 0 is the
    identity."""

    def __init__(self, table: list[list[int]], validate: bool = True):
        self.table = [list(r) for r in table]
        self.n = len(table)
        if validate:
            self._validate()
        self.inv = [self._find_inverse(i) for i in range(self.n)]

    def _validate(self):
        n = self.n
        for row in self.table:
            if len(row) != n or sorted(row) != list(range(n)):
                raise GroupError("multiplication table rows must be permutations")
        for i in range(n):
            if self.table[0][i] != i or self.table[i][0] != i:
                raise GroupError("element 0 must be the identity")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise GroupError("multiplication table is not associative")

    def _find_inverse(self, i: int) -> int:
        for j in range(self.n):
            if self.table[i][j] == 0:
                return j
        raise GroupError(f"element {i} has no inverse")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def order_of(self, a: int) -> int:
        k = 1
        x = a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    @property
    def order(self) -> int:
        return self.n

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_permutations(gens: list[tuple[int, ...]]) -> "FiniteGroup":
        """Group generated by permutations (tuples mapping i -> g[i])."""
        if not gens:
            return FiniteGroup([[0]])
        deg = len(gens[0])
        ident = tuple(range(deg))
        elems = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    x = tuple(h[g[i]] for i in range(deg))
                    if x not in elems:
                        elems.add(x)
                        nxt.append(x)
                        if len(elems) > 10**4:
                            raise GroupError("group too large (cap 10^4)")
            frontier = nxt
        ordered = [ident] + sorted(e for e in elems if e != ident)
        index = {e: i for i, e in enumerate(ordered)}
        table = [
            [index[tuple(a[b[i]] for i in range(deg))] for b in ordered] for a in ordered
        ]
        return FiniteGroup(table, validate=False)

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], validate=False)

    @staticmethod
    def direct_product(g1: "FiniteGroup", g2: "FiniteGroup") -> "FiniteGroup":
        n1, n2 = g1.n, g2.n
        table = [
            [
                (g1.mul(a1, b1)) * n2 + g2.mul(a2, b2)
                for b1 in range(n1)
                for b2 in range(n2)
            ]
            for a1 in range(n1)
            for a2 in range(n2)
        ]
        return FiniteGroup(table, validate=False)

    # -- structure -----------------------------------------------------------

    def subgroup_closure(self, gens) -> set[int]:
        out = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    x = self.mul(h, g)
                    if x not in out:
                        out.add(x)
                        nxt.append(x)
            frontier = nxt
        return out

    def is_normal(self, sub: set[int]) -> bool:
        return all(
            self.mul(self.mul(g, s), self.inv[g]) in sub for g in range(self.n) for s in sub
        )

    def normal_closure(self, gens) -> set[int]:
        conj = [
            self.mul(self.mul(g, s), self.inv[g]) for s in gens for g in range(self.n)
        ]
        return self.subgroup_closure(conj)

    def commutator_subgroup(self) -> set[int]:
        comms = {
            self.mul(self.mul(a, b), self.mul(self.inv[a], self.inv[b]))
            for a in range(self.n)
            for b in range(self.n)
        }
        return self.normal_closure(comms)

    def abelianization(self) -> AbelianStructure:
        comm = self.commutator_subgroup()
        cosets = {}
        reps = []
        for g in range(self.n):
            if g in cosets:
                continue
            reps.append(g)
            for h in comm:
                cosets[self.mul(g, h)] = g
        return AbelianStructure(reps, lambda a, b: cosets[self.mul(a, b)], cosets[0])

    def is_cyclic(self) -> bool:
        return any(self.order_of(a) == self.n for a in range(self.n))

    def sylow_subgroup(self, p: int) -> set[int]:
        """One Sylow p-subgroup by the normalizer climb: a p-subgroup below
        Sylow size always has an element of order p in its normalizer
        quotient, which extends it by a factor p."""
        target = 1
        n = self.n
        while n % p == 0:
            target *= p
            n //= p
        sub = {0}
        while len(sub) < target:
            grown = False
            for x in range(self.n):
                if x in sub:
                    continue
                if any(self.mul(self.mul(x, s), self.inv[x]) not in sub for s in sub):
                    continue
                # order of x modulo sub
                m = 1
                y = x
                while y not in sub:
                    y = self.mul(y, x)
                    m += 1
                if m % p == 0:
                    xx = _power(self, x, m // p)  # order p modulo sub
                    sub = self.subgroup_closure(list(sub) + [xx])
                    grown = True
                    break
            if not grown:
                raise GroupError("sylow climb stalled (unexpected)")
        return sub


def _power(g: FiniteGroup, a: int, k: int) -> int:
    out = 0
    base = a
    while k:
        if k & 1:
            out = g.mul(out, base)
        base = g.mul(base, base)
        k >>= 1
    return out


def _is_p_group_order(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def ell_core(group: FiniteGroup, ell: int) -> set[int]:
    """Largest normal ell-subgroup: intersection of the Sylow conjugates."""
    if group.order % ell != 0:
        return {0}
    syl = group.sylow_subgroup(ell)
    core = set(syl)
    for g in range(group.n):
        conj = {group.mul(group.mul(g, s), group.inv[g]) for s in syl}
        core &= conj
        if len(core) == 1:
            break
    # the intersection of all Sylow ell-subgroups is the ell-core
    assert group.is_normal(core)
    assert _is_p_group_order(len(core), ell)
    return core


def quotient_group(group: FiniteGroup, normal: set[int]) -> FiniteGroup:
    if not group.is_normal(normal):
        raise GroupError("quotient by a non-normal subgroup")
    reps = []
    coset_of = {}
    for g in range(group.n):
        if g in coset_of:
            continue
        reps.append(g)
        for h in normal:
            coset_of[group.mul(g, h)] = g
    # identity coset first
    reps.sort(key=lambda r: (r != coset_of[0], r))
    idx = {r: i for i, r in enumerate(reps)}
    table = [
        [idx[coset_of[group.mul(a, b)]] for b in reps] for a in reps
    ]
    return FiniteGroup(table, validate=False)


def check_cyclic_pgroup(group: FiniteGroup, p: int) -> bool:
    """The cyclicity criterion: returns whether G/[G,G] is cyclic.

    Input must be a p-group; tests assert the returned value coincides with
    G itself being cyclic across the whole catalog."""
    if not _is_p_group_order(group.order, p):
        raise GroupError("input is not a p-group")
    return group.abelianization().is_cyclic()


@dataclass
class ExtensionInstance:
    """An exact sequence 0 -> A -> B -> C -> 0 of G-modules with trivial
    action on A and C; B is a finite abelian group with a G-action."""

    b_orders: tuple[int, ...]  # B = prod Z/b_i
    action: list[list[list[int]]]  # one integer matrix per generator of G
    a_gens: list[tuple[int, ...]]  # generators of A inside B


def check_divisibility_lemma(instance: ExtensionInstance):
    """Verify #G | (#A)^k for the instance, where k = minimal generator count
    of C = B/A.  Returns (holds, data) with the orders; hypothesis failures
    (action not trivial on A or C, action not faithful) are flagged in data
    rather than raised."""
    b = instance.b_orders
    elems = _box_elements(b)

    def add(x, y):
        return tuple((xi + yi) % m for xi, yi, m in zip(x, y, b))

    zero = tuple(0 for _ in b)
    a_set = _span(instance.a_gens, add, zero)
    flags = []

    def apply(mat, x):
        return tuple(
            sum(mat[i][j] * x[j] for j in range(len(b))) % b[i] for i in range(len(b))
        )

    # group generated by the action matrices, as permutations of B
    perms = []
    for mat in instance.action:
        perm = {x: apply(mat, x) for x in elems}
        if sorted(perm.values()) != sorted(elems):
            raise GroupError("action matrix is not invertible on B")
        perms.append(perm)
    # represent group elements as permutation tuples over the element list
    order = {e: i for i, e in enumerate(elems)}

    def to_tuple(perm):
        return tuple(order[perm[x]] for x in elems)

    ident = to_tuple({x: x for x in elems})
    gens_t = [to_tuple(p) for p in perms]
    gelems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens_t:
                comp = tuple(h[g[i]] for i in range(len(elems)))
                if comp not in gelems:
                    gelems.add(comp)
                    nxt.append(comp)
        frontier = nxt
    g_order = len(gelems)
    if g_order == 1:
        flags.append("action-trivial-on-B (G acts trivially; faithfulness vacuous)")

    # hypothesis: trivial on A
    for perm in perms:
        for x in a_set:
            if perm[x] != x:
                flags.append("action-not-trivial-on-A")
                break
    # hypothesis: trivial on C = B/A
    for perm in perms:
        for x in elems:
            diff = tuple((perm[x][i] - x[i]) % b[i] for i in range(len(b)))
            if diff not in a_set:
                flags.append("action-not-trivial-on-C")
                break
    a_order = len(a_set)
    k = _min_generators_quotient(elems, a_set, add, zero, b)
    holds = (a_order**k) % g_order == 0
    return holds, {
        "G_order": g_order,
        "A_order": a_order,
        "C_generators": k,
        "flags": sorted(set(flags)),
    }


def _box_elements(orders):
    from itertools import product

    return [tuple(x) for x in product(*[range(m) for m in orders])]


def _span(gens, add, zero):
    out = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = add(h, tuple(g))
                if x not in out:
                    out.add(x)
                    nxt.append(x)
        frontier = nxt
    return out


def _min_generators_quotient(elems, a_set, add, zero, orders):
    # structure of B/A via the generic abelian machinery
    coset_of = {}
    reps = []
    for x in sorted(elems):
        if x in coset_of:
            continue
        reps.append(x)
        for h in a_set:
            coset_of[add(x, h)] = x
    st = AbelianStructure(reps, lambda p, q: coset_of[add(p, q)], coset_of[zero])
    return len(st.invariants)


# -- catalog fixtures ----------------------------------------------------------


def parse_group_catalog(text: str) -> dict[str, FiniteGroup]:
    """Parse the multiplication-table catalog format: 'group <name> <n>'
    followed by n rows of n indices, records separated by 'end'."""
    out: dict[str, FiniteGroup] = {}
    lines = [l.strip() for l in text.splitlines()]
    i = 0
    while i < len(lines):
        line = lines[i]
        i += 1
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] != "group":
            raise ValueError(f"expected 'group', got {line!r}")
        name = parts[1]
        n = int(parts[2])
        table = []
        for r in range(n):
            table.append([int(v) for v in lines[i].split()])
            i += 1
        if lines[i].strip() != "end":
            raise ValueError(f"missing 'end' after group {name}")
        i += 1
        out[name] = FiniteGroup(table)  # validated: fixtures are untrusted
    return out
