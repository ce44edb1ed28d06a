"""Robot description text format (conventional extension ``.rkin``).

One link declaration per line::

    link <id:int> name=<token> parent=<int|none> axis=<x|y|z|fx,fy,fz>
         offset=<fx,fy,fz> [mass=<f>] [com=<fx,fy,fz>]
         [inertia=<9 comma-separated f, row-major>]

``#`` starts a comment to end of line; blank lines are ignored; fields are
whitespace-separated and may appear in any order after the id. Numbers use
decimal or scientific notation with ``.`` as the separator. ``axis=x|y|z``
expands to the unit basis vector; explicit axis vectors are normalized iff
within 1e-6 of unit length and rejected otherwise. Unknown keys are errors.

``serialize`` emits the canonical form: links in ascending id, fields in
grammar order, floats at 17 significant digits, optional fields only when
non-default. Parsing canonical text reproduces the model field-for-field.
"""

import re

import numpy as np

from .errors import ModelError, ParseError
from .model import LinkRecord, RobotModel, build_model
from .textfmt import FLOAT_RE, fmt_float

AXIS_NORMALIZE_TOL = 1e-6   # explicit axis vectors beyond this are rejected
AXIS_EXACT_TOL = 1e-12      # norms this close to 1 are kept bit-for-bit

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")
_INT_RE = re.compile(r"^[+-]?\d+$")
_BASIS = {
    "x": np.array([1.0, 0.0, 0.0]),
    "y": np.array([0.0, 1.0, 0.0]),
    "z": np.array([0.0, 0.0, 1.0]),
}
_REQUIRED_KEYS = ("name", "parent", "axis", "offset")
_OPTIONAL_KEYS = ("mass", "com", "inertia")


def _parse_floats(text: str, count: int, line: int, column: int, what: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != count:
        raise ParseError(f"{what} needs {count} comma-separated numbers, got {len(parts)}",
                         line, column)
    values = []
    for part in parts:
        if not FLOAT_RE.match(part):
            raise ParseError(f"{what}: not a number: {part!r}", line, column)
        values.append(float(part))
    return np.array(values)


def _parse_axis(text: str, line: int, column: int) -> np.ndarray:
    if text in _BASIS:
        return _BASIS[text].copy()
    axis = _parse_floats(text, 3, line, column, "axis")
    norm = float(np.linalg.norm(axis))
    if abs(norm - 1.0) > AXIS_NORMALIZE_TOL:
        raise ParseError(f"non-unit axis (norm {norm!r})", line, column)
    if abs(norm - 1.0) > AXIS_EXACT_TOL:
        axis = axis / norm
    return axis


def parse(text: str) -> RobotModel:
    """Parse a robot description into a validated RobotModel.

    Every failure raises ParseError with the 1-based source line (and the
    column for token-level syntax errors); no partial model escapes.
    """
    records: list[LinkRecord] = []
    line_of_id: dict[int, int] = {}
    root_line: int | None = None
    first_link_line: int | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        code = raw.split("#", 1)[0]
        if not code.strip():
            continue
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", code)]
        col0, head = tokens[0]
        if head != "link":
            raise ParseError(f"expected 'link', got {head!r}", lineno, col0)
        if len(tokens) < 2:
            raise ParseError("missing link id", lineno, col0 + len(head))
        col1, id_token = tokens[1]
        if not _INT_RE.match(id_token):
            raise ParseError(f"link id must be an integer, got {id_token!r}", lineno, col1)
        link_id = int(id_token)
        if link_id < 0:
            raise ParseError(f"link id must be >= 0, got {link_id}", lineno, col1)
        if link_id in line_of_id:
            raise ParseError(f"duplicate link id {link_id} (first declared on line "
                             f"{line_of_id[link_id]})", lineno, col1)
        if first_link_line is None:
            first_link_line = lineno

        fields: dict[str, tuple[int, str]] = {}
        for col, token in tokens[2:]:
            if "=" not in token:
                raise ParseError(f"expected key=value, got {token!r}", lineno, col)
            key, _, value = token.partition("=")
            if key not in _REQUIRED_KEYS and key not in _OPTIONAL_KEYS:
                raise ParseError(f"unknown key {key!r}", lineno, col)
            if key in fields:
                raise ParseError(f"duplicate key {key!r}", lineno, col)
            if not value:
                raise ParseError(f"empty value for {key!r}", lineno, col)
            fields[key] = (col, value)
        for key in _REQUIRED_KEYS:
            if key not in fields:
                raise ParseError(f"missing required field {key!r}", lineno, col0)

        col, name = fields["name"]
        if not _NAME_RE.match(name):
            raise ParseError(f"invalid name {name!r}", lineno, col)

        col, parent_text = fields["parent"]
        if parent_text == "none":
            parent_id = None
            if root_line is not None:
                raise ParseError(f"multiple root links (first root on line {root_line})",
                                 lineno, col)
            root_line = lineno
        elif _INT_RE.match(parent_text):
            parent_id = int(parent_text)
        else:
            raise ParseError(f"parent must be an integer or 'none', got {parent_text!r}",
                             lineno, col)

        axis = _parse_axis(fields["axis"][1], lineno, fields["axis"][0])
        offset = _parse_floats(fields["offset"][1], 3, lineno, fields["offset"][0], "offset")

        mass = 0.0
        if "mass" in fields:
            col, value = fields["mass"]
            if not FLOAT_RE.match(value):
                raise ParseError(f"mass: not a number: {value!r}", lineno, col)
            mass = float(value)
        com = np.zeros(3)
        if "com" in fields:
            com = _parse_floats(fields["com"][1], 3, lineno, fields["com"][0], "com")
        inertia = np.zeros((3, 3))
        if "inertia" in fields:
            col, value = fields["inertia"]
            inertia = _parse_floats(value, 9, lineno, col, "inertia").reshape(3, 3)
            if np.abs(inertia - inertia.T).max() > 1e-9:
                raise ParseError("inertia matrix is not symmetric", lineno, col)

        records.append(LinkRecord(self_id=link_id, name=name, parent_id=parent_id,
                                  joint_axis=axis, offset=offset, mass=mass,
                                  com=com, inertia=inertia))
        line_of_id[link_id] = lineno

    if not records:
        raise ParseError("no link declarations", 1)
    if root_line is None:
        raise ParseError("no root link (every link declares a parent)",
                         first_link_line or 1)

    for rec in records:
        if rec.parent_id is not None and rec.parent_id not in line_of_id:
            raise ParseError(f"link {rec.self_id} references unknown parent {rec.parent_id}",
                             line_of_id[rec.self_id])

    # Parent pointers all resolve and exactly one root exists, so the only
    # way build_model can still fail is a cycle; report it with a line.
    by_id = {rec.self_id: rec for rec in records}
    for rec in records:
        seen = {rec.self_id}
        current = rec
        while current.parent_id is not None:
            if current.parent_id in seen:
                raise ParseError(f"link {rec.self_id} is not connected to the root "
                                 f"(parent cycle)", line_of_id[rec.self_id])
            seen.add(current.parent_id)
            current = by_id[current.parent_id]

    try:
        return build_model(records)
    except ModelError as exc:  # pragma: no cover - defensive; checks above cover it
        raise ParseError(str(exc), first_link_line or 1) from exc


def _axis_text(axis: np.ndarray) -> str:
    for token, basis in _BASIS.items():
        if np.array_equal(axis, basis):
            return token
    return ",".join(fmt_float(c) for c in axis)


def _vec_text(v: np.ndarray) -> str:
    return ",".join(fmt_float(c) for c in np.asarray(v).ravel())


def serialize(model: RobotModel) -> str:
    """Canonical text form; parsing it back reproduces the model exactly."""
    lines = []
    for rec in sorted(model.links, key=lambda r: r.self_id):
        parts = [
            f"link {rec.self_id}",
            f"name={rec.name}",
            "parent=none" if rec.parent_id is None else f"parent={rec.parent_id}",
            f"axis={_axis_text(rec.joint_axis)}",
            f"offset={_vec_text(rec.offset)}",
        ]
        if rec.mass != 0.0:
            parts.append(f"mass={fmt_float(rec.mass)}")
        if np.any(rec.com != 0.0):
            parts.append(f"com={_vec_text(rec.com)}")
        if np.any(rec.inertia != 0.0):
            parts.append(f"inertia={_vec_text(rec.inertia)}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def load(path) -> RobotModel:
    """Parse a robot description file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())
