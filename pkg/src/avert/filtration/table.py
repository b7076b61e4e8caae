"""Ext tables: the pairing (A, B) -> dim Ext^1(A, B) with provenance.

Entries are exact knowledge states: zero, positive (with known dimension),
or unknown.  Unknown never silently acts as zero; the calculus raises on it.
Witnesses are length-2 filtration objects realizing a nonsplit extension.
The fixture text format is parsed here and internal coherence (duality
symmetry of known-zero entries, witness shape) is validated on load; the
fixture's own derivation is cited, not re-proved.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

ZERO = "zero"
POSITIVE = "positive"
UNKNOWN = "unknown"


@dataclass
class ExtEntry:
    state: str  # ZERO | POSITIVE | UNKNOWN
    dim: int | None
    provenance: str  # computed | fixture | paper
    method: str = ""
    witness_name: str | None = None
    witness_pieces: tuple[str, str] | None = None  # (sub, quotient)


@dataclass
class ExtTable:
    name: str
    simples: dict[str, str]  # label -> kind (etale | multiplicative | oort-tate)
    duals: dict[str, str]  # label -> dual label
    entries: dict[tuple[str, str], ExtEntry] = dc_field(default_factory=dict)

    def kind(self, label: str) -> str:
        return self.simples[label]

    def is_etale(self, label: str) -> bool:
        return self.simples[label] == "etale"

    def entry(self, a: str, b: str) -> ExtEntry:
        self._check_label(a)
        self._check_label(b)
        return self.entries.get((a, b), ExtEntry(UNKNOWN, None, "absent"))

    def set_entry(self, a: str, b: str, entry: ExtEntry) -> None:
        self._check_label(a)
        self._check_label(b)
        self.entries[(a, b)] = entry

    def known_zero(self, a: str, b: str) -> bool:
        return self.entry(a, b).state == ZERO

    def _check_label(self, label: str) -> None:
        if label not in self.simples:
            raise KeyError(f"unknown simple label {label!r}")

    def validate(self) -> None:
        for label, dual in self.duals.items():
            if self.duals.get(dual) != label:
                raise ValueError(f"duality is not an involution at {label}")
            k, dk = self.simples[label], self.simples[dual]
            if {k, dk} not in ({"etale", "multiplicative"}, {"oort-tate"}):
                raise ValueError(f"dual kinds inconsistent at {label}: {k} vs {dk}")
        for (a, b), e in self.entries.items():
            if e.state == ZERO:
                # duality coherence: Ext(A,B) = 0 implies Ext(B*, A*) = 0
                mirror = (self.duals[b], self.duals[a])
                me = self.entries.get(mirror)
                if me is not None and me.state == POSITIVE:
                    raise ValueError(
                        f"duality incoherence: {a, b} known zero but {mirror} positive"
                    )
            if e.witness_pieces is not None:
                sub, quot = e.witness_pieces
                if (sub, quot) != (b, a):
                    raise ValueError(
                        f"witness for Ext({a},{b}) must have sub {b} and quotient {a}"
                    )
                if e.state != POSITIVE:
                    raise ValueError(f"witness attached to non-positive entry {a, b}")

    def condition_one_pairs(self):
        """All (non-etale simple T, etale simple E) pairs, sorted."""
        non_etale = sorted(l for l in self.simples if not self.is_etale(l))
        etale = sorted(l for l in self.simples if self.is_etale(l))
        return [(t, e) for t in non_etale for e in etale]


def parse_ext_tables(text: str) -> dict[str, ExtTable]:
    """Parse the Ext-table fixture format (grammar in data/README.md)."""
    tables: dict[str, ExtTable] = {}
    cur: ExtTable | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key = parts[0]
        if key == "table":
            if cur is not None:
                raise ValueError(f"line {lineno}: nested table")
            cur = ExtTable(parts[1], {}, {})
        elif cur is None:
            raise ValueError(f"line {lineno}: {key} outside a table")
        elif key == "simple":
            cur.simples[parts[1]] = parts[2]
        elif key == "dual":
            cur.duals[parts[1]] = parts[2]
            cur.duals[parts[2]] = parts[1]
        elif key == "ext":
            a, b, state = parts[1], parts[2], parts[3]
            rest = parts[4:]
            dim = None
            if state == POSITIVE:
                dim = int(rest[0])
                rest = rest[1:]
            prov = rest[0] if rest else "fixture"
            method = " ".join(rest[1:])
            cur.entries[(a, b)] = ExtEntry(state, dim, prov, method)
        elif key == "witness":
            a, b = parts[1], parts[2]
            sub, quot = parts[3], parts[4]
            name = " ".join(parts[5:]) if len(parts) > 5 else f"ext({a},{b})-witness"
            e = cur.entries.get((a, b))
            if e is None:
                raise ValueError(f"line {lineno}: witness before its ext entry")
            e.witness_name = name
            e.witness_pieces = (sub, quot)
        elif key == "end":
            cur.validate()
            tables[cur.name] = cur
            cur = None
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if cur is not None:
        raise ValueError("unterminated table")
    return tables
