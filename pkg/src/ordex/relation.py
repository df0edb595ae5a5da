"""Finite binary relations stored as bitset rows.

Row ``i`` of a relation is an ``int`` whose bit ``j`` is set iff
``(x_i, x_j)`` belongs to the relation.  Every operation returns a new
relation; nothing here mutates its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class UniverseMismatch(ValueError):
    """Raised when two relations over different universes are combined."""


class _Omega:
    """Marker for the first infinite ordinal (``R^OMEGA`` is the closure)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OMEGA"

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()


def parse_order(text: str | int | _Omega) -> int | _Omega:
    """Accept ``3``, ``"3"``, ``"omega"`` or ``OMEGA``."""
    if text is OMEGA or isinstance(text, int):
        return text
    if str(text).strip().lower() in {"omega", "w", "ω"}:
        return OMEGA
    return int(text)


@dataclass(frozen=True)
class Universe:
    labels: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("universe must contain at least one element")
        index = {}
        for i, label in enumerate(labels):
            if label in index:
                raise ValueError(f"duplicate universe label {label!r}")
            index[label] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, labels: Iterable[str]) -> Universe:
        return cls(tuple(labels))

    @classmethod
    def numbered(cls, n: int, prefix: str = "x", start: int = 1) -> Universe:
        return cls(tuple(f"{prefix}{i}" for i in range(start, start + n)))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown element {label!r}") from None

    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1


def _bits(word: int) -> Iterator[int]:
    while word:
        low = word & -word
        yield low.bit_length() - 1
        word ^= low


@dataclass(frozen=True, slots=True)
class Relation:
    universe: Universe
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.universe)
        if len(self.rows) != n:
            raise ValueError(f"expected {n} rows, got {len(self.rows)}")
        limit = 1 << n
        for row in self.rows:
            if row < 0 or row >= limit:
                raise ValueError("row bitset exceeds universe size")

    # construction

    @classmethod
    def empty(cls, universe: Universe) -> Relation:
        return cls(universe, (0,) * len(universe))

    @classmethod
    def identity(cls, universe: Universe) -> Relation:
        return cls(universe, tuple(1 << i for i in range(len(universe))))

    @classmethod
    def full(cls, universe: Universe) -> Relation:
        return cls(universe, (universe.full_mask(),) * len(universe))

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[str, str]]) -> Relation:
        rows = [0] * len(universe)
        for x, y in pairs:
            rows[universe.index(x)] |= 1 << universe.index(y)
        return cls(universe, tuple(rows))

    @classmethod
    def from_index_pairs(cls, universe: Universe, pairs: Iterable[tuple[int, int]]) -> Relation:
        rows = [0] * len(universe)
        for i, j in pairs:
            rows[i] |= 1 << j
        return cls(universe, tuple(rows))

    @classmethod
    def from_mask(cls, universe: Universe, mask: int) -> Relation:
        """Inverse of :attr:`mask`: bit ``i*n + j`` encodes ``(x_i, x_j)``."""
        n = len(universe)
        low = (1 << n) - 1
        return cls(universe, tuple((mask >> (i * n)) & low for i in range(n)))

    @classmethod
    def from_chain(cls, universe: Universe, top_to_bottom: Sequence[str]) -> Relation:
        """Reflexive linear order in which earlier labels are ranked higher."""
        pos = [universe.index(x) for x in top_to_bottom]
        if sorted(pos) != list(range(len(universe))):
            raise ValueError("chain must list every element exactly once")
        return linear_order_from_sequence(universe, pos)

    # views

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def mask(self) -> int:
        n = self.n
        out = 0
        for i, row in enumerate(self.rows):
            out |= row << (i * n)
        return out

    def has(self, x: str, y: str) -> bool:
        u = self.universe
        return bool(self.rows[u.index(x)] >> u.index(y) & 1)

    def has_index(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def __contains__(self, pair: object) -> bool:
        x, y = pair  # type: ignore[misc]
        if x not in self.universe or y not in self.universe:
            return False
        return self.has(x, y)

    def index_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows) for j in _bits(row)]

    def pairs(self) -> list[tuple[str, str]]:
        labels = self.universe.labels
        return [(labels[i], labels[j]) for i, j in self.index_pairs()]

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self.pairs())

    @property
    def cardinality(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def is_empty(self) -> bool:
        return not any(self.rows)

    def __repr__(self) -> str:
        body = ", ".join(f"({x},{y})" for x, y in self.pairs())
        return f"Relation({{{body}}} on {list(self.universe.labels)})"

    # algebra

    def _check(self, other: Relation) -> None:
        if self.universe != other.universe:
            raise UniverseMismatch(
                f"universes differ: {self.universe.labels} vs {other.universe.labels}"
            )

    def __or__(self, other: Relation) -> Relation:
        self._check(other)
        return Relation(self.universe, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: Relation) -> Relation:
        self._check(other)
        return Relation(self.universe, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: Relation) -> Relation:
        self._check(other)
        return Relation(self.universe, tuple(a & ~b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: Relation) -> bool:
        self._check(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __lt__(self, other: Relation) -> bool:
        return self <= other and self != other

    def __ge__(self, other: Relation) -> bool:
        return other <= self

    def __gt__(self, other: Relation) -> bool:
        return other < self

    def transpose(self) -> Relation:
        n = self.n
        cols = [0] * n
        for i, row in enumerate(self.rows):
            for j in _bits(row):
                cols[j] |= 1 << i
        return Relation(self.universe, tuple(cols))

    def with_diagonal(self) -> Relation:
        return Relation(self.universe, tuple(row | (1 << i) for i, row in enumerate(self.rows)))

    def without_diagonal(self) -> Relation:
        return Relation(self.universe, tuple(row & ~(1 << i) for i, row in enumerate(self.rows)))


def linear_order_from_sequence(universe: Universe, order: Sequence[int]) -> Relation:
    """Reflexive linear order placing ``order[0]`` on top."""
    rows = [0] * len(universe)
    below = 0
    for i in reversed(order):
        below |= 1 << i
        rows[i] = below
    return Relation(universe, tuple(rows))


def all_relations(universe: Universe) -> Iterator[Relation]:
    """Every relation on ``universe``, in increasing mask order."""
    n = len(universe)
    for mask in range(1 << (n * n)):
        yield Relation.from_mask(universe, mask)


# operations


def compose(r1: Relation, r2: Relation) -> Relation:
    """``(x, y)`` is in the result iff some ``z`` has ``x r1 z`` and ``z r2 y``."""
    r1._check(r2)
    rows = []
    for row in r1.rows:
        acc = 0
        for z in _bits(row):
            acc |= r2.rows[z]
        rows.append(acc)
    return Relation(r1.universe, tuple(rows))


def transitive_closure(r: Relation) -> Relation:
    """Warshall's algorithm on bitset rows."""
    rows = list(r.rows)
    n = len(rows)
    for k in range(n):
        bit = 1 << k
        row_k = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= row_k
    return Relation(r.universe, tuple(rows))


def power(r: Relation, m: int | _Omega) -> Relation:
    """m-fold composition; ``power(r, OMEGA)`` is the transitive closure."""
    if m is OMEGA:
        return transitive_closure(r)
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError(f"power exponent must be a positive int or OMEGA, got {m!r}")
    if m < 1:
        raise ValueError("power exponent must be at least 1")
    result = r
    base = r
    m -= 1
    while m:
        if m & 1:
            result = compose(result, base)
        base = compose(base, base)
        m >>= 1
    return result


@dataclass(frozen=True)
class PowerSequence:
    """The eventually periodic sequence ``R^1, R^2, ...``.

    ``powers[k - 1]`` is ``R^k`` for ``k < tail + period``; from ``tail`` on
    the sequence repeats with the given period.
    """

    powers: tuple[Relation, ...]
    tail: int
    period: int

    @property
    def bound(self) -> int:
        return self.tail + self.period

    def at(self, k: int) -> Relation:
        if k < 1:
            raise ValueError("power index must be at least 1")
        if k >= self.tail:
            k = self.tail + (k - self.tail) % self.period
        return self.powers[k - 1]


def power_sequence(r: Relation) -> PowerSequence:
    seen: dict[tuple[int, ...], int] = {}
    powers: list[Relation] = []
    current = r
    k = 1
    while current.rows not in seen:
        seen[current.rows] = k
        powers.append(current)
        current = compose(current, r)
        k += 1
    tail = seen[current.rows]
    return PowerSequence(tuple(powers), tail, k - tail)


def asymmetric_part(r: Relation) -> Relation:
    return r - r.transpose()


def symmetric_part(r: Relation) -> Relation:
    return r & r.transpose()


def decompose(r: Relation) -> tuple[Relation, Relation]:
    """Split ``r`` into its strict part ``P`` and its indifference part ``I``."""
    t = r.transpose()
    return r - t, r & t


def incomparable_pairs(r: Relation) -> set[tuple[str, str]]:
    """Ordered pairs of distinct elements related in neither direction."""
    labels = r.universe.labels
    sym = r | r.transpose()
    full = r.universe.full_mask()
    out = set()
    for i, row in enumerate(sym.rows):
        for j in _bits(full & ~row & ~(1 << i)):
            out.add((labels[i], labels[j]))
    return out


def incomparable_index_pairs(r: Relation) -> list[tuple[int, int]]:
    sym = r | r.transpose()
    full = r.universe.full_mask()
    return [(i, j) for i, row in enumerate(sym.rows) for j in _bits(full & ~row & ~(1 << i))]


def restrict(r: Relation, subset: Iterable[str]) -> Relation:
    """Relation on the sub-universe ``subset`` (kept in the parent's order)."""
    wanted = list(dict.fromkeys(subset))
    if not wanted:
        raise ValueError("cannot restrict to an empty subset")
    for x in wanted:
        if x not in r.universe:
            raise KeyError(f"unknown element {x!r}")
    keep = sorted(r.universe.index(x) for x in wanted)
    sub = Universe(tuple(r.universe.labels[i] for i in keep))
    rows = []
    for i in keep:
        row = r.rows[i]
        rows.append(sum(1 << k for k, j in enumerate(keep) if row >> j & 1))
    return Relation(sub, tuple(rows))


def is_extension(r: Relation, q: Relation) -> bool:
    """``r`` is contained in ``q`` and strict pairs of ``r`` stay strict in ``q``."""
    return r <= q and asymmetric_part(r) <= asymmetric_part(q)


@dataclass(frozen=True)
class RelationReport:
    reflexive: bool
    irreflexive: bool
    transitive: bool
    antisymmetric: bool
    total: bool
    complete: bool
    acyclic: bool

    @property
    def quasi_ordering(self) -> bool:
        return self.reflexive and self.transitive

    @property
    def ordering(self) -> bool:
        return self.quasi_ordering and self.total

    @property
    def partial_order(self) -> bool:
        return self.quasi_ordering and self.antisymmetric

    @property
    def linear_order(self) -> bool:
        return self.partial_order and self.total

    @property
    def strict_partial_order(self) -> bool:
        return self.irreflexive and self.transitive

    @property
    def strict_linear_order(self) -> bool:
        return self.strict_partial_order and self.total

    def as_dict(self) -> dict[str, bool]:
        names = (
            "reflexive irreflexive transitive antisymmetric total complete acyclic "
            "quasi_ordering ordering partial_order linear_order "
            "strict_partial_order strict_linear_order"
        ).split()
        return {name: getattr(self, name) for name in names}


def classify(r: Relation) -> RelationReport:
    n = r.n
    rows = r.rows
    full = r.universe.full_mask()
    reflexive = all(rows[i] >> i & 1 for i in range(n))
    irreflexive = not any(rows[i] >> i & 1 for i in range(n))
    transitive = compose(r, r) <= r
    t = r.transpose().rows
    antisymmetric = all((rows[i] & t[i]) & ~(1 << i) == 0 for i in range(n))
    total = all((rows[i] | t[i] | (1 << i)) == full for i in range(n))
    closure = transitive_closure(r)
    acyclic = not any(closure.rows[i] >> i & 1 for i in range(n))
    return RelationReport(
        reflexive=reflexive,
        irreflexive=irreflexive,
        transitive=transitive,
        antisymmetric=antisymmetric,
        total=total,
        complete=reflexive and total,
        acyclic=acyclic,
    )


def maximal_elements(r: Relation) -> set[str]:
    """Elements ``x`` with no ``y`` such that ``(y, x)`` is a strict pair."""
    strict_in = asymmetric_part(r).transpose()
    return {r.universe.labels[i] for i, row in enumerate(strict_in.rows) if row == 0}


def strongly_connected_components(r: Relation) -> list[list[int]]:
    """Components as sorted index lists, ordered by smallest member."""
    reach = transitive_closure(r).with_diagonal()
    back = reach.transpose()
    seen = 0
    comps = []
    for i in range(r.n):
        if seen >> i & 1:
            continue
        members = reach.rows[i] & back.rows[i]
        seen |= members
        comps.append(list(_bits(members)))
    return comps


def quotient_by_indifference(r: Relation) -> tuple[Universe, Relation, dict[str, str]]:
    """Collapse the classes of ``I(closure(r))`` together with the diagonal.

    Returns the class universe, the relation induced by ``r`` on classes and
    the element-to-class-label mapping.  Singleton classes keep their label;
    larger classes are labelled ``{a,b,...}``.
    """
    labels = r.universe.labels
    comps = strongly_connected_components(r)
    names = []
    owner = [0] * r.n
    for c, members in enumerate(comps):
        if len(members) == 1:
            names.append(labels[members[0]])
        else:
            names.append("{" + ",".join(labels[i] for i in members) + "}")
        for i in members:
            owner[i] = c
    classes = Universe(tuple(names))
    induced = Relation.from_index_pairs(classes, ((owner[i], owner[j]) for i, j in r.index_pairs()))
    mapping = {labels[i]: names[owner[i]] for i in range(r.n)}
    return classes, induced, mapping
