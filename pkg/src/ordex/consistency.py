"""Where a relation sits in the m-, Lambda(m)-, Delta(m)- and S-consistency hierarchy."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .relation import (
    OMEGA,
    PowerSequence,
    Relation,
    _Omega,
    asymmetric_part,
    power,
    power_sequence,
    strongly_connected_components,
    symmetric_part,
    transitive_closure,
)


@dataclass(frozen=True)
class LambdaIndex:
    """Result of the Lambda classification: a finite m, omega, or inconsistent."""

    kind: str
    m: int | None = None

    @classmethod
    def finite(cls, m: int) -> LambdaIndex:
        return cls("finite", m)

    @classmethod
    def omega(cls) -> LambdaIndex:
        return cls("omega")

    @classmethod
    def inconsistent(cls) -> LambdaIndex:
        return cls("inconsistent")

    @property
    def is_omega(self) -> bool:
        return self.kind == "omega"

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self) -> str:
        return str(self.m) if self.is_finite else self.kind


def is_m_consistent(r: Relation, m: int | _Omega) -> bool:
    """No path of length exactly ``m`` from x to y while ``(y, x)`` is strict.

    With ``m = OMEGA`` paths of any length count, which is S-consistency
    checked through the closure rather than through components.
    """
    return (power(r, m) & asymmetric_part(r).transpose()).is_empty()


def is_m_consistent_via_parts(r: Relation, m: int | _Omega) -> bool:
    """``P(r) ⊆ P(r^m)``.

    Agrees with :func:`is_m_consistent` on reflexive relations only: the
    forward direction needs ``r ⊆ r^m``.
    """
    return asymmetric_part(r) <= asymmetric_part(power(r, m))


def has_m_rank_of_symmetry(
    r: Relation, m: int | _Omega, seq: PowerSequence | None = None
) -> bool:
    """``I(r^n) == I(r^m)`` for every ``n >= m``.

    Only finitely many powers are distinct, so checking one full period past
    ``max(m, tail)`` settles the quantifier.
    """
    if m is OMEGA:
        return True
    if m < 1:
        raise ValueError("m must be at least 1")
    seq = seq or power_sequence(r)
    target = symmetric_part(seq.at(m))
    stop = max(m, seq.tail) + seq.period
    return all(symmetric_part(seq.at(k)) == target for k in range(m + 1, stop))


def is_lambda_consistent(r: Relation, m: int | _Omega, seq: PowerSequence | None = None) -> bool:
    """m-consistency together with the m-rank of symmetry."""
    return is_m_consistent(r, m) and has_m_rank_of_symmetry(r, m, seq)


def is_s_consistent(r: Relation) -> bool:
    """Every edge inside a strongly connected component is symmetric."""
    owner = [0] * r.n
    for c, members in enumerate(strongly_connected_components(r)):
        for i in members:
            owner[i] = c
    for i, j in r.index_pairs():
        if owner[i] == owner[j] and not r.has_index(j, i):
            return False
    return True


def s_consistency_witness(r: Relation) -> list[str] | None:
    """A cycle ``[x, y, ..., x]`` whose first edge is strict, or None."""
    closure = transitive_closure(r)
    strict = asymmetric_part(r)
    for x, y in strict.index_pairs():
        if not closure.has_index(y, x):
            continue
        # BFS for a shortest y -> x path
        parent = {y: None}
        queue = deque([y])
        while queue:
            u = queue.popleft()
            if u == x:
                break
            row = r.rows[u]
            for v in range(r.n):
                if row >> v & 1 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        path = []
        node = x
        while node is not None:
            path.append(node)
            node = parent[node]
        path.reverse()
        labels = r.universe.labels
        return [labels[x]] + [labels[i] for i in path]
    return None


def lambda_index(r: Relation, seq: PowerSequence | None = None) -> LambdaIndex:
    """Omega when omega-consistent, else the largest finite m with both
    m-consistency and m-rank of symmetry, searched up to ``tail + period``."""
    if is_m_consistent(r, OMEGA):
        return LambdaIndex.omega()
    seq = seq or power_sequence(r)
    for m in range(seq.bound, 0, -1):
        if is_m_consistent(r, m) and has_m_rank_of_symmetry(r, m, seq):
            return LambdaIndex.finite(m)
    return LambdaIndex.inconsistent()


def is_delta_consistent(r: Relation, m: int | _Omega, seq: PowerSequence | None = None) -> bool:
    """Lambda(m)-consistent with ``I(r^m)`` equal to the diagonal."""
    if not is_lambda_consistent(r, m, seq):
        return False
    return symmetric_part(power(r, m)) == Relation.identity(r.universe)


def delta_index(r: Relation, seq: PowerSequence | None = None) -> int | _Omega | None:
    """Smallest admissible m for Delta(m)-consistency (finite first, then OMEGA)."""
    seq = seq or power_sequence(r)
    for m in range(1, seq.bound + 1):
        if is_delta_consistent(r, m, seq):
            return m
    if is_delta_consistent(r, OMEGA, seq):
        return OMEGA
    return None


def delta_violation(r: Relation) -> tuple[str, str] | None:
    """First off-diagonal pair of ``I(closure(r))``, the obstacle to linear extensions."""
    sym = symmetric_part(transitive_closure(r)).without_diagonal()
    pairs = sym.pairs()
    return pairs[0] if pairs else None


@dataclass(frozen=True)
class ConsistencyReport:
    table: dict[int, tuple[bool, bool]]
    s_consistent: bool
    lambda_: LambdaIndex
    delta_m: int | _Omega | None
    tail: int
    period: int

    def as_dict(self) -> dict:
        return {
            "m_consistent": {str(m): c for m, (c, _) in self.table.items()},
            "m_rank_of_symmetry": {str(m): k for m, (_, k) in self.table.items()},
            "s_consistent": self.s_consistent,
            "lambda": str(self.lambda_),
            "delta_m": None if self.delta_m is None else str(self.delta_m).lower(),
            "power_tail": self.tail,
            "power_period": self.period,
        }


def consistency_report(r: Relation, max_m: int | None = None) -> ConsistencyReport:
    seq = power_sequence(r)
    top = max(seq.bound, max_m or 0)
    table = {
        m: (is_m_consistent(r, m), has_m_rank_of_symmetry(r, m, seq)) for m in range(1, top + 1)
    }
    return ConsistencyReport(
        table=table,
        s_consistent=is_s_consistent(r),
        lambda_=lambda_index(r, seq),
        delta_m=delta_index(r, seq),
        tail=seq.tail,
        period=seq.period,
    )
