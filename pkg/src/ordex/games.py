"""Finite normal-form games whose players hold possibly incomplete preferences.

A profile is a tuple of action labels; its label in the profile universe is
the actions joined by ``|``.  Each player's preference is an ordinary
:class:`~ordex.relation.Relation` over that universe, read "at least as good as".
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import CapExceeded, PreconditionFailed
from .extension import enumerate_tournament_extensions
from .relation import Relation, Universe, asymmetric_part, incomparable_index_pairs

Profile = tuple[str, ...]

DEFAULT_COMPLETION_CAP = 3**12


def profile_label(profile: Sequence[str]) -> str:
    return "|".join(profile)


def profile_universe(actions: Sequence[Sequence[str]]) -> Universe:
    return Universe(tuple(profile_label(p) for p in itertools.product(*actions)))


@dataclass(frozen=True)
class Game:
    actions: tuple[tuple[str, ...], ...]
    prefs: tuple[Relation, ...]
    universe: Universe = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        actions = tuple(tuple(a) for a in self.actions)
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "prefs", tuple(self.prefs))
        if not actions or any(not a for a in actions):
            raise ValueError("every player needs a nonempty action set")
        if len(self.prefs) != len(actions):
            raise ValueError("one preference relation per player is required")
        universe = profile_universe(actions)
        for i, pref in enumerate(self.prefs, start=1):
            if pref.universe != universe:
                raise ValueError(f"player {i}'s preference is not over the profile universe")
        object.__setattr__(self, "universe", universe)

    @classmethod
    def from_pairs(
        cls, actions: Sequence[Sequence[str]], prefs: Sequence[Sequence[tuple[Profile, Profile]]]
    ) -> Game:
        universe = profile_universe(actions)
        rels = tuple(
            Relation.from_pairs(universe, ((profile_label(a), profile_label(b)) for a, b in pairs))
            for pairs in prefs
        )
        return cls(tuple(tuple(a) for a in actions), rels)

    @property
    def players(self) -> int:
        return len(self.actions)

    def profiles(self) -> list[Profile]:
        return list(itertools.product(*self.actions))

    def with_prefs(self, prefs: Sequence[Relation]) -> Game:
        return Game(self.actions, tuple(prefs))


@lru_cache(maxsize=64)
def _deviation_masks(actions: tuple[tuple[str, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """``masks[i][k]``: profiles reachable from profile k by a unilateral change of player i."""
    profiles = list(itertools.product(*actions))
    index = {p: k for k, p in enumerate(profiles)}
    out = []
    for i in range(len(actions)):
        row = []
        for p in profiles:
            mask = 0
            for b in actions[i]:
                if b != p[i]:
                    mask |= 1 << index[p[:i] + (b,) + p[i + 1 :]]
            row.append(mask)
        out.append(tuple(row))
    return tuple(out)


def _stable_mask(actions, player: int, pref: Relation, strict: bool) -> int:
    """Profiles at which ``player`` has no profitable unilateral deviation."""
    beats = (asymmetric_part(pref) if strict else pref).transpose().rows
    deviations = _deviation_masks(actions)[player]
    mask = 0
    for k, dev in enumerate(deviations):
        if beats[k] & dev == 0:
            mask |= 1 << k
    return mask


def _equilibrium_mask(game: Game, strict: bool = True) -> int:
    mask = (1 << len(game.universe)) - 1
    for i, pref in enumerate(game.prefs):
        mask &= _stable_mask(game.actions, i, pref, strict)
    return mask


def _profiles_of(game: Game, mask: int) -> list[Profile]:
    profiles = game.profiles()
    return [profiles[k] for k in range(len(profiles)) if mask >> k & 1]


def nash_equilibria(game: Game, strict: bool = True) -> list[Profile]:
    """Profiles where no player has a deviation strictly preferred to staying.

    ``strict=False`` reads the deviation test with the whole relation instead
    of its strict part.
    """
    return _profiles_of(game, _equilibrium_mask(game, strict))


def _completion_count(game: Game) -> int:
    total = 1
    for pref in game.prefs:
        total *= 3 ** (len(incomparable_index_pairs(pref)) // 2)
    return total


def enumerate_completions(game: Game, cap: int = DEFAULT_COMPLETION_CAP) -> list[Game]:
    count = _completion_count(game)
    if count > cap:
        raise CapExceeded(
            f"{count} completions exceed the cap {cap}; use witness_completion instead"
        )
    per_player = [enumerate_tournament_extensions(p, bound=cap) for p in game.prefs]
    return [game.with_prefs(choice) for choice in itertools.product(*per_player)]


def witness_completion(game: Game, astar: Sequence[str]) -> Game:
    """A completion in which ``astar`` is still an equilibrium.

    Every incomparable pair touching ``astar`` is oriented with ``astar`` on
    top; the remaining ones take the default orientation (earlier profile
    above).  Only incomparable pairs are filled, so each new preference is a
    complete extension of the old one.
    """
    astar = tuple(astar)
    label = profile_label(astar)
    if label not in game.universe:
        raise ValueError(f"{astar} is not a profile of this game")
    if astar not in nash_equilibria(game):
        raise PreconditionFailed(f"{astar} is not a Nash equilibrium", astar)
    top = game.universe.index(label)
    completed = []
    for pref in game.prefs:
        base = pref.with_diagonal()
        rows = list(base.rows)
        for i, j in incomparable_index_pairs(base):
            if i > j:
                continue
            hi, lo = (j, i) if j == top else (i, j)
            rows[hi] |= 1 << lo
        completed.append(Relation(base.universe, tuple(rows)))
    return game.with_prefs(completed)


@dataclass
class CompletionUnionReport:
    mode: str  # "exhaustive" | "partial"
    equilibria: list[Profile]
    union: list[Profile]
    completions_checked: int
    only_in_game: list[Profile]
    only_in_completions: list[Profile]

    @property
    def equal(self) -> bool:
        return not self.only_in_game and not self.only_in_completions

    @property
    def union_within_game(self) -> bool:
        return not self.only_in_completions

    def as_dict(self) -> dict:
        def labels(ps):
            return [profile_label(p) for p in ps]

        return {
            "mode": self.mode,
            "equal": self.equal,
            "union_within_game": self.union_within_game,
            "equilibria": labels(self.equilibria),
            "union_over_completions": labels(self.union),
            "completions_checked": self.completions_checked,
            "only_in_game": labels(self.only_in_game),
            "only_in_completions": labels(self.only_in_completions),
        }


def completion_union_check(
    game: Game,
    cap: int = DEFAULT_COMPLETION_CAP,
    samples: int = 200,
    seed: int = 0,
) -> CompletionUnionReport:
    """Compare ``N(G)`` with the union of ``N(G')`` over all completions ``G'``.

    Beyond ``cap`` completions the check turns partial: every equilibrium of
    ``G`` gets a witness completion, and ``samples`` random completions
    (seeded) probe the other inclusion.
    """
    ne = _equilibrium_mask(game)
    if _completion_count(game) <= cap:
        mode = "exhaustive"
        per_player = [
            sorted({_stable_mask(game.actions, i, q, True) for q in enumerate_tournament_extensions(p, cap)})
            for i, p in enumerate(game.prefs)
        ]
        # completions sharing a stable set contribute identically; iterate distinct sets
        union = 0
        for combo in itertools.product(*per_player):
            acc = (1 << len(game.universe)) - 1
            for m in combo:
                acc &= m
            union |= acc
        checked = _completion_count(game)
    else:
        mode = "partial"
        union = 0
        checked = 0
        for astar in _profiles_of(game, ne):
            union |= _equilibrium_mask(witness_completion(game, astar))
            checked += 1
        rng = random.Random(seed)
        for _ in range(samples):
            prefs = []
            for pref in game.prefs:
                base = pref.with_diagonal()
                rows = list(base.rows)
                for i, j in incomparable_index_pairs(base):
                    if i < j:
                        state = rng.randrange(3)
                        if state != 1:
                            rows[i] |= 1 << j
                        if state != 0:
                            rows[j] |= 1 << i
                prefs.append(Relation(base.universe, tuple(rows)))
            union |= _equilibrium_mask(game.with_prefs(prefs))
            checked += 1
    return CompletionUnionReport(
        mode=mode,
        equilibria=_profiles_of(game, ne),
        union=_profiles_of(game, union),
        completions_checked=checked,
        only_in_game=_profiles_of(game, ne & ~union),
        only_in_completions=_profiles_of(game, union & ~ne),
    )
