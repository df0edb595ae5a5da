"""Realizers, covers, dimension and the finite-scale Duggan checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import CapExceeded, PreconditionFailed
from .extension import (
    DEFAULT_LINEAR_CAP,
    DEFAULT_ORDERING_CAP,
    DEFAULT_TOURNAMENT_BOUND,
    enumerate_linear_extensions,
    enumerate_ordering_extensions,
    enumerate_tournament_extensions,
)
from .relation import (
    Relation,
    Universe,
    _bits,
    _Omega,
    all_relations,
    classify,
    incomparable_index_pairs,
    is_extension,
    power,
    transitive_closure,
)

FLAVORS = ("ordering", "linear", "strict-linear", "tournament")


@dataclass(frozen=True)
class RealizerFamily:
    members: tuple[Relation, ...]
    target: Relation

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))
        for q in self.members:
            if q.universe != self.target.universe:
                raise ValueError("family members must share the target's universe")

    def __len__(self) -> int:
        return len(self.members)


def intersect(family: RealizerFamily | Iterable[Relation]) -> Relation:
    members = family.members if isinstance(family, RealizerFamily) else tuple(family)
    if not members:
        # the empty intersection would be the full relation; refuse instead
        raise ValueError("cannot intersect an empty family")
    out = members[0]
    for q in members[1:]:
        out = out & q
    return out


@dataclass(frozen=True)
class RealizerCheck:
    """The two realizer conditions, reported separately."""

    intersection_matches: bool
    every_incomparable_pair_realized: bool
    extra_pairs: tuple[tuple[str, str], ...] = ()
    missing_pairs: tuple[tuple[str, str], ...] = ()
    unrealized_pairs: tuple[tuple[str, str], ...] = ()

    @property
    def holds(self) -> bool:
        return self.intersection_matches and self.every_incomparable_pair_realized

    def __bool__(self) -> bool:
        return self.holds

    def as_dict(self) -> dict:
        return {
            "intersection_matches": self.intersection_matches,
            "every_incomparable_pair_realized": self.every_incomparable_pair_realized,
            "extra_pairs": [list(p) for p in self.extra_pairs],
            "missing_pairs": [list(p) for p in self.missing_pairs],
            "unrealized_pairs": [list(p) for p in self.unrealized_pairs],
        }


def is_realizer(family: RealizerFamily) -> RealizerCheck:
    target = family.target
    if not family.members:
        return RealizerCheck(False, False)
    meet = intersect(family)
    extra = tuple((meet - target).pairs())
    missing = tuple((target - meet).pairs())
    labels = target.universe.labels
    unrealized = tuple(
        (labels[i], labels[j])
        for i, j in incomparable_index_pairs(target)
        if not any(q.has_index(i, j) for q in family.members)
    )
    return RealizerCheck(not extra and not missing, not unrealized, extra, missing, unrealized)


@dataclass(frozen=True)
class IntersectionReport:
    flavor: str
    status: str  # "equal" | "unequal" | "no-extensions"
    family_size: int
    target: Relation
    intersection: Relation | None
    witness: dict | None = None
    realizer: RealizerCheck | None = None
    m: int | None = None

    @property
    def equal(self) -> bool:
        return self.status == "equal"

    def as_dict(self) -> dict:
        from .formats import relation_to_dict

        return {
            "flavor": self.flavor,
            "status": self.status,
            "family_size": self.family_size,
            "target": relation_to_dict(self.target),
            "intersection": None if self.intersection is None else relation_to_dict(self.intersection),
            "witness": self.witness,
            "realizer": None if self.realizer is None else self.realizer.as_dict(),
            "m": self.m,
        }


def flavor_family(
    r: Relation, flavor: str, cap: int | None = None
) -> list[Relation]:
    if flavor == "ordering":
        return enumerate_ordering_extensions(r, cap or DEFAULT_ORDERING_CAP)
    if flavor == "linear":
        return enumerate_linear_extensions(r, cap or DEFAULT_LINEAR_CAP)
    if flavor == "strict-linear":
        return enumerate_linear_extensions(r, cap or DEFAULT_LINEAR_CAP, strict=True)
    if flavor == "tournament":
        return enumerate_tournament_extensions(r, cap or DEFAULT_TOURNAMENT_BOUND)
    raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")


def flavor_target(r: Relation, flavor: str, m: int | _Omega = 1) -> Relation:
    """Reflexive closure for ordering/linear, diagonal-free closure for strict
    linear, ``(R ∪ Δ)^m`` for tournaments."""
    if flavor in ("ordering", "linear"):
        return transitive_closure(r).with_diagonal()
    if flavor == "strict-linear":
        return transitive_closure(r).without_diagonal()
    if flavor == "tournament":
        return power(r.with_diagonal(), m)
    raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")


def _first_difference(target: Relation, meet: Relation) -> dict | None:
    extra = (meet - target).pairs()
    missing = (target - meet).pairs()
    if not extra and not missing:
        return None
    if extra and (not missing or extra[0] <= missing[0]):
        return {"pair": list(extra[0]), "side": "intersection-only"}
    return {"pair": list(missing[0]), "side": "target-only"}


def verify_intersection_theorem(
    r: Relation, flavor: str, m: int | _Omega = 1, cap: int | None = None
) -> IntersectionReport:
    target = flavor_target(r, flavor, m)
    family = flavor_family(r, flavor, cap)
    m_out = m if isinstance(m, int) else None
    if not family:
        return IntersectionReport(flavor, "no-extensions", 0, target, None, m=m_out)
    meet = intersect(family)
    witness = _first_difference(target, meet)
    check = is_realizer(RealizerFamily(tuple(family), target))
    status = "equal" if witness is None else "unequal"
    return IntersectionReport(flavor, status, len(family), target, meet, witness, check, m_out)


# covers and uncovered pairs


def _linear_family(r: Relation, cap: int) -> list[Relation]:
    family = enumerate_linear_extensions(r, cap)
    if not family:
        raise PreconditionFailed("relation has no linear extension; covers is vacuous")
    return family


def _check_incomparable(r: Relation, pair: tuple[str, str]) -> tuple[int, int]:
    closure = transitive_closure(r)
    u = r.universe
    i, j = u.index(pair[0]), u.index(pair[1])
    if i == j or closure.has_index(i, j) or closure.has_index(j, i):
        raise ValueError(f"{pair} is not an incomparable pair of the closure")
    return i, j


def covers(
    r: Relation,
    p: tuple[str, str],
    q: tuple[str, str],
    extensions: Sequence[Relation] | None = None,
    cap: int = DEFAULT_LINEAR_CAP,
) -> bool:
    """Every linear extension containing ``p`` also contains ``q``."""
    pi = _check_incomparable(r, p)
    qi = _check_incomparable(r, q)
    family = extensions if extensions is not None else _linear_family(r, cap)
    return all(q_.has_index(*qi) for q_ in family if q_.has_index(*pi))


def _extension_masks(r: Relation, cap: int) -> tuple[list[tuple[int, int]], dict[tuple[int, int], int]]:
    family = _linear_family(r, cap)
    inc = incomparable_index_pairs(transitive_closure(r))
    masks = {}
    for p in inc:
        masks[p] = sum(1 << k for k, q in enumerate(family) if q.has_index(*p))
    return inc, masks


def covered_set(r: Relation, p: tuple[str, str], cap: int = DEFAULT_LINEAR_CAP) -> set[tuple[str, str]]:
    """``F_(x,y)``: the incomparable pairs covered by ``p``."""
    pi = _check_incomparable(r, p)
    inc, masks = _extension_masks(r, cap)
    labels = r.universe.labels
    return {(labels[i], labels[j]) for i, j in inc if masks[pi] & ~masks[(i, j)] == 0}


def uncovered_pairs(r: Relation, cap: int = DEFAULT_LINEAR_CAP) -> set[tuple[str, str]]:
    """Maximal elements of the incomparable pairs under the covers preorder."""
    inc, masks = _extension_masks(r, cap)
    labels = r.universe.labels
    out = set()
    for p in inc:
        # q covers p  <=>  masks[q] ⊆ masks[p]
        if all(masks[q] == masks[p] for q in inc if masks[q] & ~masks[p] == 0):
            out.add((labels[p[0]], labels[p[1]]))
    return out


# dimension


@dataclass(frozen=True)
class DimensionResult:
    k: int
    witness: RealizerFamily
    nodes: int = 0

    def __iter__(self):
        return iter((self.k, self.witness))


def _min_cover(universe_mask: int, sets: list[int]) -> tuple[list[int], int]:
    """Exact minimum set cover by branch and bound; returns (indices, nodes)."""
    # greedy seed
    greedy: list[int] = []
    left = universe_mask
    while left:
        best = max(range(len(sets)), key=lambda s: ((sets[s] & left).bit_count(), -s))
        if not sets[best] & left:
            raise ValueError("sets do not cover the universe")
        greedy.append(best)
        left &= ~sets[best]
    best_sol = list(greedy)
    widest = max(s.bit_count() for s in sets)
    nodes = 0

    def search(left: int, chosen: list[int]) -> None:
        nonlocal best_sol, nodes
        nodes += 1
        if not left:
            if len(chosen) < len(best_sol):
                best_sol = list(chosen)
            return
        need = -(-left.bit_count() // widest)
        if len(chosen) + need >= len(best_sol):
            return
        # branch on the element with fewest covering sets
        element, options = None, None
        for e in _bits(left):
            opts = [s for s in range(len(sets)) if sets[s] >> e & 1]
            if options is None or len(opts) < len(options):
                element, options = e, opts
        options.sort(key=lambda s: (-(sets[s] & left).bit_count(), s))
        for s in options:
            chosen.append(s)
            search(left & ~sets[s], chosen)
            chosen.pop()

    search(universe_mask, [])
    return sorted(best_sol), nodes


def dimension(r: Relation, cap: int = DEFAULT_LINEAR_CAP) -> DimensionResult:
    """Least number of linear extensions intersecting to the reflexive closure."""
    target = transitive_closure(r).with_diagonal()
    if not classify(target).antisymmetric:
        raise PreconditionFailed(
            "closure is not antisymmetric; no family of linear orders intersects to it"
        )
    family = enumerate_linear_extensions(r, cap)
    if not family:
        raise PreconditionFailed("relation has no linear extension")
    inc = incomparable_index_pairs(target)
    if not inc:
        return DimensionResult(1, RealizerFamily((family[0],), target), 1)
    slot = {p: k for k, p in enumerate(inc)}
    # a member excludes (i, j) exactly when it contains (j, i)
    sets = [sum(1 << slot[p] for p in inc if q.has_index(*p)) for q in family]
    distinct: dict[int, int] = {}
    for idx, s in enumerate(sets):
        distinct.setdefault(s, idx)
    reps = sorted(distinct.values(), key=lambda idx: (-sets[idx].bit_count(), idx))
    chosen, nodes = _min_cover((1 << len(inc)) - 1, [sets[i] for i in reps])
    members = tuple(family[reps[c]] for c in chosen)
    return DimensionResult(len(members), RealizerFamily(members, target), nodes)


# Duggan-class checks


@dataclass(frozen=True)
class RelationClass:
    """A class of relations given by a membership predicate or an explicit list."""

    name: str
    contains: Callable[[Relation], bool]
    members: tuple[Relation, ...] | None = None

    @classmethod
    def explicit(cls, name: str, relations: Iterable[Relation]) -> RelationClass:
        rels = tuple(relations)
        masks = {q.mask for q in rels}
        return cls(name, lambda q: q.mask in masks, rels)

    @classmethod
    def predicate(cls, name: str, fn: Callable[[Relation], bool]) -> RelationClass:
        return cls(name, fn)

    @classmethod
    def compatible_extensions(cls, r: Relation) -> RelationClass:
        return cls("compatible-extensions", lambda q: is_extension(r, q))

    @classmethod
    def everything(cls) -> RelationClass:
        return cls("all-relations", lambda q: True)

    def member_list(self, universe: Universe, cap: int = 3) -> list[Relation]:
        if self.members is not None:
            return [q for q in self.members if q.universe == universe]
        if len(universe) > cap:
            raise CapExceeded(
                f"enumerating a predicate class needs 2^{len(universe) ** 2} relations; cap is n <= {cap}"
            )
        return [q for q in all_relations(universe) if self.contains(q)]


@dataclass
class DugganReport:
    class_name: str
    closed_upward: bool
    closed_upward_witness: list | None
    arc_receptive: bool
    arc_receptive_witness: dict | None
    closure_in_class: bool
    family_size: int
    conclusion: str  # "equal" | "unequal" | "no-extensions"
    conclusion_witness: dict | None
    notes: list[str] = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return self.closed_upward and self.arc_receptive and self.closure_in_class

    def as_dict(self) -> dict:
        return {
            "class": self.class_name,
            "closed_upward": self.closed_upward,
            "closed_upward_witness": self.closed_upward_witness,
            "arc_receptive": self.arc_receptive,
            "arc_receptive_witness": self.arc_receptive_witness,
            "closure_in_class": self.closure_in_class,
            "family_size": self.family_size,
            "conclusion": self.conclusion,
            "conclusion_witness": self.conclusion_witness,
            "notes": list(self.notes),
        }


def duggan_check(
    r: Relation, relation_class: RelationClass, cap: int = 3, ordering_cap: int = DEFAULT_ORDERING_CAP
) -> DugganReport:
    """Check the closed-upward and arc-receptive hypotheses on one universe,
    then compare the closure with the intersection of the class's complete
    transitive extensions of ``r``."""
    u = r.universe
    members = relation_class.member_list(u, cap)
    notes = [
        "closed upward is checked on inclusion-comparable member pairs; the union of a "
        "finite chain is its top element, so the property cannot fail on a finite list",
        "arc-receptive closes R ∪ {(s,t)}, not R' ∪ {(s,t)}",
        "the conclusion compares against the reflexive closure of R",
    ]

    masks = sorted({q.mask for q in members})
    mask_set = set(masks)
    cu_witness = None
    for a in masks:
        for b in masks:
            if a & ~b == 0 and (a | b) not in mask_set:
                cu_witness = [Relation.from_mask(u, a).pairs(), Relation.from_mask(u, b).pairs()]
                break
        if cu_witness:
            break

    transitive = [q for q in members if classify(q).transitive]
    arc_witness = None
    n = len(u)
    labels = u.labels
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            trigger = next((q for q in transitive if not q.has_index(t, s)), None)
            if trigger is None:
                continue
            grown = transitive_closure(
                Relation(u, tuple(row | (1 << t) if i == s else row for i, row in enumerate(r.rows)))
            )
            if not relation_class.contains(grown):
                arc_witness = {
                    "s": labels[s],
                    "t": labels[t],
                    "transitive_member": [list(p) for p in trigger.pairs()],
                    "closure_not_in_class": [list(p) for p in grown.pairs()],
                }
                break
        if arc_witness:
            break

    closure = transitive_closure(r)
    family = [q for q in enumerate_ordering_extensions(r, ordering_cap) if relation_class.contains(q)]
    target = closure.with_diagonal()
    if family:
        witness = _first_difference(target, intersect(family))
        conclusion = "equal" if witness is None else "unequal"
    else:
        witness, conclusion = None, "no-extensions"
    return DugganReport(
        class_name=relation_class.name,
        closed_upward=cu_witness is None,
        closed_upward_witness=cu_witness,
        arc_receptive=arc_witness is None,
        arc_receptive_witness=arc_witness,
        closure_in_class=relation_class.contains(closure),
        family_size=len(family),
        conclusion=conclusion,
        conclusion_witness=witness,
        notes=notes,
    )
