"""Rewriting of filtrations by simple labels, justified by Ext vanishing.

A filtration is the ordered list of simple subquotients, first sub first.
The three rewriting operations mirror the subobject-forcing lemma, its
isotypic corollary, and the connected-etale style decomposition; each one
demands the exact Ext-vanishing hypotheses from the table and raises
BlockedRewrite naming the offending pair when an entry is nonzero or
unknown.  Extension classes beyond split/nonsplit are never tracked: the
lemmas only consume vanishing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .table import ZERO, ExtTable

SPLIT = "Split"
NONSPLIT = "NonSplit"
UNKNOWN_FLAG = "Unknown"


class BlockedRewrite(ValueError):
    def __init__(self, op: str, pair: tuple[str, str], state: str):
        self.op = op
        self.pair = pair
        self.state = state
        super().__init__(
            f"{op}: hypothesis Ext({pair[0]},{pair[1]}) = 0 not established "
            f"(entry is {state})"
        )


@dataclass(frozen=True)
class FiltrationObject:
    pieces: tuple[str, ...]
    splitting_flags: tuple[str, ...] = ()  # length = len(pieces) - 1

    def __post_init__(self):
        flags = self.splitting_flags
        if not flags and len(self.pieces) > 1:
            object.__setattr__(
                self, "splitting_flags", tuple(UNKNOWN_FLAG for _ in self.pieces[:-1])
            )

    @property
    def length(self) -> int:
        return len(self.pieces)

    def multiset(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for p in self.pieces:
            out[p] = out.get(p, 0) + 1
        return out

    def __repr__(self):
        return f"[{', '.join(self.pieces)}]"


def admits(obj: FiltrationObject, label: str, table: ExtTable) -> bool:
    table._check_label(label)
    for p in obj.pieces:
        table._check_label(p)
    return label in obj.pieces


def _require_zero(op: str, table: ExtTable, a: str, b: str) -> None:
    e = table.entry(a, b)
    if e.state != ZERO:
        raise BlockedRewrite(op, (a, b), e.state)


def force_subobject(obj: FiltrationObject, label: str, table: ExtTable) -> FiltrationObject:
    """Rewrite so `label` appears as the first piece.

    Requires Ext(label, B) = 0 for every other piece B; the pull-back
    induction of the underlying lemma then moves one copy of `label` to the
    front without disturbing the rest."""
    if not admits(obj, label, table):
        raise ValueError(f"object {obj} does not admit {label}")
    for b in sorted(set(obj.pieces)):
        if b != label:
            _require_zero("force_subobject", table, label, b)
    rest = list(obj.pieces)
    rest.remove(label)
    return FiltrationObject((label, *rest))


def isotypic_split(
    obj: FiltrationObject, label: str, table: ExtTable
) -> tuple[FiltrationObject, FiltrationObject]:
    """Split off the maximal sub filtered by `label` only: returns (J_A,
    J_rest) with J_A all copies of `label` and J_rest not admitting it."""
    for b in sorted(set(obj.pieces)):
        if b != label:
            _require_zero("isotypic_split", table, label, b)
    copies = tuple(p for p in obj.pieces if p == label)
    rest = tuple(p for p in obj.pieces if p != label)
    return FiltrationObject(copies), FiltrationObject(rest)


def dual_filtration(obj: FiltrationObject, table: ExtTable) -> FiltrationObject:
    """Cartier duality on filtrations: reverse the list and dualize labels."""
    pieces = tuple(table.duals[p] for p in reversed(obj.pieces))
    return FiltrationObject(pieces)


def condition_one_established(table: ExtTable) -> bool:
    return all(table.known_zero(t, e) for t, e in table.condition_one_pairs())


def etale_decomposition(
    obj: FiltrationObject, table: ExtTable
) -> tuple[FiltrationObject, FiltrationObject]:
    """(J_sub, J_quot): J_quot admits only etale labels, J_sub none.

    Implemented through the dual route: dualize, accumulate the
    multiplicative isotypic parts (their Ext hypotheses are exactly the
    duals of the vanishing that defines the first condition), dualize back.
    """
    for t, e in table.condition_one_pairs():
        entry = table.entry(t, e)
        if entry.state != ZERO:
            raise BlockedRewrite("etale_decomposition", (t, e), entry.state)
    dual = dual_filtration(obj, table)
    mult_pieces = []
    rest = dual
    # accumulate multiplicative subobjects one isotypic block at a time
    mult_labels = sorted(
        {p for p in dual.pieces if table.kind(p) == "multiplicative"}
    )
    for label in mult_labels:
        for b in sorted(set(rest.pieces)):
            if b != label and table.kind(b) != "multiplicative":
                # Ext(label, b) with label multiplicative, b non-multiplicative:
                # dual pair of a condition-(1) entry
                _require_zero("etale_decomposition", table, label, b)
        head, rest = isotypic_split_allowing(rest, label, table)
        mult_pieces.extend(head.pieces)
    m_part = FiltrationObject(tuple(mult_pieces))
    nonm_part = rest
    j_quot = dual_filtration(m_part, table)  # etale quotient
    j_sub = dual_filtration(nonm_part, table)
    assert all(table.is_etale(p) for p in j_quot.pieces)
    assert not any(table.is_etale(p) for p in j_sub.pieces)
    return j_sub, j_quot


def isotypic_split_allowing(obj, label, table):
    """isotypic_split variant used inside the dual accumulation: vanishing
    against other multiplicative labels is not required (extensions among
    multiplicative pieces stay multiplicative in the accumulation)."""
    copies = tuple(p for p in obj.pieces if p == label)
    rest = tuple(p for p in obj.pieces if p != label)
    return FiltrationObject(copies), FiltrationObject(rest)


@dataclass
class PointCountBound:
    etale_count: int
    multiplicative_count: int
    ell: int

    @property
    def etale_bound(self) -> int:
        return self.ell**self.etale_count

    @property
    def multiplicative_bound(self) -> int:
        return self.ell**self.multiplicative_count

    def describe(self) -> str:
        return (
            f"|J_q(F_q)| >= {self.ell}^{self.etale_count} = {self.etale_bound}, "
            f"|J*_q(F_q)| >= {self.ell}^{self.multiplicative_count} = "
            f"{self.multiplicative_bound}"
        )


def point_count_bound(
    obj: FiltrationObject, table: ExtTable, ell: int, conditions_certified: bool
) -> PointCountBound:
    """Counts of etale and multiplicative pieces with the symbolic fiber
    lower bounds; requires both conditions certified on the descriptor."""
    if not conditions_certified:
        raise ValueError("point-count bound requires Conditions (1) and (2) certified")
    n = sum(1 for p in obj.pieces if table.kind(p) == "etale")
    m = sum(1 for p in obj.pieces if table.kind(p) == "multiplicative")
    return PointCountBound(n, m, ell)
