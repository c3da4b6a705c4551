"""File formats: spaces/metrics/vectors as JSON, dense matrices as CSV.

Matrix files (functions, sets, plans) carry a one-line JSON header naming
both factor spaces, then one CSV row per X-atom with a Y-label header row.
Numbers serialize as "p/q" strings in exact mode and as 17-significant-digit
decimals in float mode; parse(emit(x)) == x in both regimes.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .model import (DiscreteSpace, MetricMatrix, Plan, ProductFunction,
                    ProductSet, ValidationError, is_exact, parse_number,
                    require_valid_space, validate_semimetric)


def format_number(x) -> str:
    if isinstance(x, bool):
        raise ValidationError("boolean is not a number")
    if is_exact(x):
        return str(Fraction(x))
    return format(x, ".17g")


def _parse_weight(text, exact: bool):
    try:
        return parse_number(text, exact)
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"bad numeric literal {text!r}: {e}") from None


# ------------------------------------------------------------------ spaces

def space_to_obj(space: DiscreteSpace) -> dict:
    return {"labels": list(space.labels),
            "weights": [format_number(w) for w in space.weights]}


def space_from_obj(obj: dict, exact: bool = True) -> DiscreteSpace:
    if not isinstance(obj, dict) or "labels" not in obj or "weights" not in obj:
        raise ValidationError("space object needs 'labels' and 'weights'")
    space = DiscreteSpace(obj["labels"],
                          [_parse_weight(w, exact) for w in obj["weights"]])
    require_valid_space(space)
    return space


def load_space(path: str, exact: bool = True) -> DiscreteSpace:
    return space_from_obj(_load_json(path), exact)


def save_space(space: DiscreteSpace, path: str) -> None:
    _dump_json(space_to_obj(space), path)


# ------------------------------------------------------------------ metrics

def metric_to_obj(m: MetricMatrix) -> dict:
    return {"kind": "metric", "space": space_to_obj(m.space),
            "dist": [[format_number(v) for v in row] for row in m.dist]}


def metric_from_obj(obj: dict, exact: bool = True) -> MetricMatrix:
    if "space" not in obj or "dist" not in obj:
        raise ValidationError("metric object needs 'space' and 'dist'")
    space = space_from_obj(obj["space"], exact)
    m = MetricMatrix(space, [[_parse_weight(v, exact) for v in row]
                             for row in obj["dist"]])
    kind, witness = validate_semimetric(m)
    if kind == "invalid":
        raise ValidationError(f"invalid semimetric: {witness}")
    return m


def load_metric(path: str, exact: bool = True) -> MetricMatrix:
    return metric_from_obj(_load_json(path), exact)


def save_metric(m: MetricMatrix, path: str) -> None:
    _dump_json(metric_to_obj(m), path)


# ------------------------------------------------------------------ vectors

def vector_to_obj(values) -> dict:
    return {"kind": "vector", "values": [format_number(v) for v in values]}


def vector_from_obj(obj: dict, exact: bool = True) -> list:
    if "values" not in obj:
        raise ValidationError("vector object needs 'values'")
    return [_parse_weight(v, exact) for v in obj["values"]]


def load_vector(path: str, exact: bool = True) -> list:
    return vector_from_obj(_load_json(path), exact)


def save_vector(values, path: str) -> None:
    _dump_json(vector_to_obj(values), path)


# ----------------------------------------------------------------- matrices

def _matrix_kind(obj):
    if isinstance(obj, ProductFunction):
        return "function"
    if isinstance(obj, ProductSet):
        return "set"
    if isinstance(obj, Plan):
        return "plan"
    raise ValidationError(f"not a matrix object: {type(obj).__name__}")


def dumps_matrix(obj) -> str:
    kind = _matrix_kind(obj)
    header = {"kind": kind,
              "x_space": space_to_obj(obj.x_space),
              "y_space": space_to_obj(obj.y_space)}
    if kind == "plan":
        header["signed"] = obj.signed
        rows = [[format_number(v) for v in row] for row in obj.mass]
    elif kind == "set":
        rows = [["1" if v else "0" for v in row] for row in obj.membership]
    else:
        rows = [[format_number(v) for v in row] for row in obj.values]
    buf = io.StringIO()
    buf.write(json.dumps(header, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(obj.y_space.labels))
    for label, row in zip(obj.x_space.labels, rows):
        writer.writerow([label] + row)
    return buf.getvalue()


def loads_matrix(text: str, exact: bool = True):
    lines = text.splitlines()
    if not lines:
        raise ValidationError("empty matrix file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise ValidationError(f"bad matrix header (line 1): {e}") from None
    kind = header.get("kind")
    if kind not in ("function", "set", "plan"):
        raise ValidationError(f"unknown matrix kind {kind!r}")
    x_space = space_from_obj(header.get("x_space", {}), exact)
    y_space = space_from_obj(header.get("y_space", {}), exact)
    body = list(csv.reader(lines[1:]))
    body = [row for row in body if row]
    if len(body) != x_space.size + 1:
        raise ValidationError(
            f"expected {x_space.size + 1} data rows, found {len(body)}")
    if body[0][1:] != list(y_space.labels):
        raise ValidationError("column header does not match Y labels")
    values = []
    for i, row in enumerate(body[1:]):
        if row[0] != x_space.labels[i]:
            raise ValidationError(f"row {i + 2}: label {row[0]!r} out of order")
        if len(row) != y_space.size + 1:
            raise ValidationError(f"row {i + 2}: wrong cell count")
        values.append(row[1:])
    if kind == "set":
        for i, row in enumerate(values):
            for v in row:
                if v not in ("0", "1"):
                    raise ValidationError(f"row {i + 2}: set cells must be 0 or 1")
        return ProductSet(x_space, y_space,
                          [[v == "1" for v in row] for row in values])
    parsed = [[_parse_weight(v, exact) for v in row] for row in values]
    if kind == "plan":
        return Plan(x_space, y_space, parsed, signed=bool(header.get("signed")))
    return ProductFunction(x_space, y_space, parsed)


def load_matrix(path: str, exact: bool = True):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e}") from None
    try:
        return loads_matrix(text, exact)
    except ValidationError as e:
        raise ValidationError(f"{path}: {e}") from None


def save_matrix(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_matrix(obj))


# ----------------------------------------------- structured (report) objects

def function_to_obj(f: ProductFunction) -> dict:
    return {"x_space": space_to_obj(f.x_space), "y_space": space_to_obj(f.y_space),
            "values": [[format_number(v) for v in row] for row in f.values]}


def function_from_obj(obj: dict, exact: bool = True) -> ProductFunction:
    return ProductFunction(
        space_from_obj(obj["x_space"], exact), space_from_obj(obj["y_space"], exact),
        [[_parse_weight(v, exact) for v in row] for row in obj["values"]])


def set_to_obj(z: ProductSet) -> dict:
    return {"x_space": space_to_obj(z.x_space), "y_space": space_to_obj(z.y_space),
            "membership": [[1 if v else 0 for v in row] for row in z.membership]}


def set_from_obj(obj: dict, exact: bool = True) -> ProductSet:
    return ProductSet(
        space_from_obj(obj["x_space"], exact), space_from_obj(obj["y_space"], exact),
        obj["membership"])


def plan_to_obj(p: Plan) -> dict:
    out = {"x_space": space_to_obj(p.x_space), "y_space": space_to_obj(p.y_space),
           "mass": [[format_number(v) for v in row] for row in p.mass]}
    if p.signed:
        out["signed"] = True
    return out


def plan_from_obj(obj: dict, exact: bool = True) -> Plan:
    return Plan(
        space_from_obj(obj["x_space"], exact), space_from_obj(obj["y_space"], exact),
        [[_parse_weight(v, exact) for v in row] for row in obj["mass"]],
        signed=bool(obj.get("signed")))


# --------------------------------------------------------------- primitives

def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}: bad JSON: {e}") from None


def _dump_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def jsonable(x):
    """Recursively convert model numbers to their string form for reports."""
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x  # bare ints are indices and counts, not measured quantities
    if isinstance(x, (float, Fraction)):
        return format_number(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise ValidationError(f"cannot serialize {type(x).__name__}")
