"""World files.

A world file is a YAML mapping::

    order: 3
    obstacles: ["110", "301"]        # quaternary prefixes, coarse allowed
    obstacle_cells: [[1, 6]]         # optional (i, j) cells at ``order``
    regions:                         # optional, for the coverage tree
      - {prefix: "2", order: 3}
    default_order: 2

Digit strings are read from the raw scalar text, so ``012`` keeps its
leading zero whether or not it is quoted.
"""
from __future__ import annotations

from pathlib import Path
from typing import Optional

import yaml

from .coverage_simulator import World
from .errors import HilbertCoverageError, ParseError
from .hilbert_core import GridCell, digits_of_cell, format_digits
from .nonuniform_planner import ResolutionMap

KEYS = ("order", "obstacles", "obstacle_cells", "regions", "default_order")


def _err(message: str, node, source: Optional[str]) -> ParseError:
    mark = node.start_mark
    return ParseError(message, mark.line + 1, mark.column + 1, source)


def _int(node, source, what: str) -> int:
    if not isinstance(node, yaml.ScalarNode):
        raise _err(f"{what} must be an integer", node, source)
    try:
        return int(node.value)
    except ValueError:
        raise _err(f"{what} must be an integer, got {node.value!r}", node, source) from None


def _digits(node, source) -> tuple[int, ...]:
    if not isinstance(node, yaml.ScalarNode):
        raise _err("obstacle must be a quaternary digit string", node, source)
    text = node.value.strip()
    if text.startswith("0."):
        text = text[2:]
    for offset, ch in enumerate(text):
        if ch not in "0123":
            mark = node.start_mark
            # +1 for an opening quote when the scalar was quoted
            col = mark.column + 1 + offset + (1 if node.style in ("'", '"') else 0)
            raise ParseError(f"invalid quaternary digit {ch!r} in obstacle {node.value!r}",
                             mark.line + 1, col, source)
    if not text:
        raise _err("empty obstacle string", node, source)
    return tuple(int(c) for c in text)


def _seq(node, source, what: str):
    if not isinstance(node, yaml.SequenceNode):
        raise _err(f"{what} must be a list", node, source)
    return node.value


def parse_world(text: str, source: Optional[str] = None) -> World:
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ParseError(str(exc.problem or exc), mark.line + 1 if mark else None,
                         mark.column + 1 if mark else None, source) from None
    if root is None or not isinstance(root, yaml.MappingNode):
        raise ParseError("world file must be a mapping", 1, 1, source)
    fields = {}
    for key_node, value_node in root.value:
        key = key_node.value
        if key not in KEYS:
            raise _err(f"unknown key {key!r} (expected one of {', '.join(KEYS)})", key_node, source)
        fields[key] = value_node
    if "order" not in fields:
        raise ParseError("missing required key 'order'", 1, 1, source)
    order = _int(fields["order"], source, "order")
    if order < 1:
        raise _err("order must be >= 1", fields["order"], source)

    obstacles = []
    positions = {}
    if "obstacles" in fields:
        for item in _seq(fields["obstacles"], source, "obstacles"):
            d = _digits(item, source)
            if len(d) > order:
                raise _err(f"obstacle {item.value!r} is longer than order {order}", item, source)
            obstacles.append(d)
            positions[d] = item
    if "obstacle_cells" in fields:
        for item in _seq(fields["obstacle_cells"], source, "obstacle_cells"):
            pair = _seq(item, source, "obstacle cell")
            if len(pair) != 2:
                raise _err("obstacle cell must be [i, j]", item, source)
            i, j = (_int(v, source, "cell index") for v in pair)
            try:
                d = digits_of_cell(GridCell(order, i, j))
            except HilbertCoverageError as exc:
                raise _err(str(exc), item, source) from None
            obstacles.append(d)
            positions[d] = item

    rmap = None
    if "regions" in fields or "default_order" in fields:
        regions = []
        for item in _seq(fields["regions"], source, "regions") if "regions" in fields else []:
            if not isinstance(item, yaml.MappingNode):
                raise _err("region must be a mapping with 'prefix' and 'order'", item, source)
            entry = {k.value: v for k, v in item.value}
            if set(entry) != {"prefix", "order"}:
                raise _err("region must have exactly the keys 'prefix' and 'order'", item, source)
            prefix = () if entry["prefix"].value == "" else _digits(entry["prefix"], source)
            regions.append((prefix, _int(entry["order"], source, "region order")))
        default = _int(fields["default_order"], source, "default_order") if "default_order" in fields else order
        try:
            rmap = ResolutionMap(tuple(regions), default)
        except HilbertCoverageError as exc:
            raise _err(str(exc), fields.get("regions", fields.get("default_order")), source) from None
        if rmap.max_order > order:
            raise _err(f"regions demand order {rmap.max_order} above world order {order}",
                       fields.get("regions", fields.get("default_order")), source)

    try:
        return World(order, frozenset(obstacles), rmap)
    except HilbertCoverageError as exc:
        node = next((positions[d] for d in obstacles if f"'{format_digits(d)}'" in str(exc)), fields["order"])
        raise _err(str(exc), node, source) from None


def load_world(path) -> World:
    path = Path(path)
    return parse_world(path.read_text(), str(path))


def dump_world(world: World) -> str:
    data = {"order": world.order, "obstacles": world.obstacle_strings()}
    rmap = world.resolution_map
    if rmap is not None:
        data["regions"] = [{"prefix": "".join(map(str, p)), "order": o} for p, o in rmap.regions]
        data["default_order"] = rmap.default_order
    return yaml.safe_dump(data, sort_keys=False, default_style=None)
