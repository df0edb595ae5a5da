"""Text and JSON encodings for relations, constraints and games.

Relation text format::

    # comment
    universe a b c
    pair a b
    pair b c

The JSON alternative ``{"universe": [...], "pairs": [[x, y], ...]}`` is
detected by a leading ``{``.  Game files use ``players k``, then
``actions <i> <label>+`` lines, then ``pref <i>`` blocks of ``pair`` lines
whose profiles are written ``a1|a2|...|ak``.
"""

from __future__ import annotations

import json

from .errors import InputError
from .relation import Relation, Universe


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _universe(labels, line: int | None) -> Universe:
    if not labels:
        raise InputError("empty universe", line)
    try:
        return Universe(tuple(labels))
    except ValueError as exc:
        raise InputError(str(exc), line) from None


def parse_relation(text: str) -> Relation:
    if text.lstrip().startswith("{"):
        return _parse_relation_json(text)
    universe = None
    pairs = []
    for number, words in _lines(text):
        head, args = words[0], words[1:]
        if head == "universe":
            if universe is not None:
                raise InputError("second universe line", number)
            universe = _universe(args, number)
        elif head == "pair":
            if universe is None:
                raise InputError("pair before universe line", number)
            if len(args) != 2:
                raise InputError("pair needs exactly two labels", number)
            for label in args:
                if label not in universe:
                    raise InputError(f"unknown label {label!r}", number)
            pairs.append((args[0], args[1]))
        else:
            raise InputError(f"unknown directive {head!r}", number)
    if universe is None:
        raise InputError("missing universe line")
    return Relation.from_pairs(universe, pairs)


def _parse_relation_json(text: str) -> Relation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict) or "universe" not in data:
        raise InputError("JSON relation needs a 'universe' list")
    universe = _universe([str(x) for x in data["universe"]], None)
    pairs = []
    for item in data.get("pairs", []):
        if not isinstance(item, list) or len(item) != 2:
            raise InputError(f"malformed pair {item!r}")
        x, y = str(item[0]), str(item[1])
        for label in (x, y):
            if label not in universe:
                raise InputError(f"unknown label {label!r}")
        pairs.append((x, y))
    return Relation.from_pairs(universe, pairs)


def format_relation(r: Relation) -> str:
    lines = ["universe " + " ".join(r.universe.labels)]
    lines += [f"pair {x} {y}" for x, y in r.pairs()]
    return "\n".join(lines) + "\n"


def relation_to_dict(r: Relation) -> dict:
    return {"universe": list(r.universe.labels), "pairs": [[x, y] for x, y in r.pairs()]}


def relation_from_dict(data: dict) -> Relation:
    return _parse_relation_json(json.dumps(data))


# games


def parse_game(text: str):
    from .games import Game, profile_universe

    players = None
    actions: dict[int, tuple[str, ...]] = {}
    prefs: dict[int, list] = {}
    current = None
    universe = None
    for number, words in _lines(text):
        head, args = words[0], words[1:]
        if head == "players":
            if players is not None or len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                raise InputError("expected a single 'players <k>' line", number)
            players = int(args[0])
        elif head == "actions":
            if players is None:
                raise InputError("actions before players line", number)
            if len(args) < 2 or not args[0].isdigit():
                raise InputError("expected 'actions <i> <label>+'", number)
            i = int(args[0])
            if not 1 <= i <= players or i in actions:
                raise InputError(f"bad or repeated player index {i}", number)
            if len(set(args[1:])) != len(args[1:]):
                raise InputError("duplicate action label", number)
            if any("|" in a for a in args[1:]):
                raise InputError("action labels may not contain '|'", number)
            actions[i] = tuple(args[1:])
        elif head == "pref":
            if players is None or len(actions) != players:
                raise InputError("pref block before all action sets are declared", number)
            if len(args) != 1 or not args[0].isdigit() or not 1 <= int(args[0]) <= players:
                raise InputError("expected 'pref <i>'", number)
            current = int(args[0])
            if universe is None:
                universe = profile_universe([actions[k] for k in range(1, players + 1)])
            prefs.setdefault(current, [])
        elif head == "pair":
            if current is None:
                raise InputError("pair outside a pref block", number)
            if len(args) != 2:
                raise InputError("pair needs exactly two profiles", number)
            for label in args:
                if label not in universe:
                    raise InputError(f"unknown profile {label!r}", number)
            prefs[current].append((args[0], args[1]))
        else:
            raise InputError(f"unknown directive {head!r}", number)
    if players is None:
        raise InputError("missing players line")
    if len(actions) != players:
        raise InputError("missing action sets")
    ordered = tuple(actions[k] for k in range(1, players + 1))
    universe = universe or profile_universe(ordered)
    relations = tuple(
        Relation.from_pairs(universe, prefs.get(k, [])) for k in range(1, players + 1)
    )
    return Game(ordered, relations)


def format_game(game) -> str:
    lines = [f"players {game.players}"]
    for i, acts in enumerate(game.actions, start=1):
        lines.append(f"actions {i} " + " ".join(acts))
    for i, pref in enumerate(game.prefs, start=1):
        lines.append(f"pref {i}")
        lines += [f"pair {x} {y}" for x, y in pref.pairs()]
    return "\n".join(lines) + "\n"
