"""
Algebra spec files (JSON).

    {"name": "dual_numbers", "dim": 2, "labels": ["1", "x"],
     "mu": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
     "alpha": [["1", "0"], ["0", "1"]],
     "unit": ["1", "0"],
     "theta": [["0", "1"], ["1", "0"]]}

``mu`` lists [i, j, k, c] meaning e_i . e_j has coefficient c on e_k;
absent entries are zero. Numbers are strings "p/q" (ints are accepted too).
"""

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from homcalc import linalg
from homcalc.algebra import HomAlgebra


class SpecError(ValueError):
    """Unreadable or malformed spec; ``where`` points at the offending place."""

    def __init__(self, message, where=None):
        super().__init__(message if where is None else "%s: %s" % (where, message))
        self.where = where


@dataclass
class AlgebraSpec:
    name: str
    algebra: HomAlgebra
    theta: object = None
    source: str = None


def _scalar(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SpecError("expected a rational as a string like \"3/4\"", where)
    try:
        return linalg.q(x)
    except (ValueError, ZeroDivisionError, OverflowError):
        raise SpecError("not a rational: %r" % (x,), where) from None


def _square(rows, n, where):
    if not isinstance(rows, list) or len(rows) != n:
        raise SpecError("expected %d rows" % n, where)
    out = linalg.zeros(n, n)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise SpecError("expected %d entries" % n, "%s[%d]" % (where, i))
        for j, x in enumerate(row):
            out[i, j] = _scalar(x, "%s[%d][%d]" % (where, i, j))
    return out


def parse_spec(data, source=None):
    """Build an :class:`AlgebraSpec` from decoded JSON."""
    if not isinstance(data, dict):
        raise SpecError("top level must be an object")
    for key in ("dim", "mu", "alpha"):
        if key not in data:
            raise SpecError("missing field %r" % key)
    n = data["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SpecError("dim must be a positive integer", "dim")
    name = data.get("name") or (Path(source).stem if source else "algebra")
    if not isinstance(name, str):
        raise SpecError("name must be a string", "name")
    labels = data.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n
                               or not all(isinstance(x, str) for x in labels)):
        raise SpecError("labels must be %d strings" % n, "labels")
    mu = linalg.zeros(n, n, n)
    if not isinstance(data["mu"], list):
        raise SpecError("mu must be a list of [i, j, k, c] entries", "mu")
    for pos, entry in enumerate(data["mu"]):
        where = "mu[%d]" % pos
        if not isinstance(entry, list) or len(entry) != 4:
            raise SpecError("expected [i, j, k, c]", where)
        idx = entry[:3]
        if not all(isinstance(i, int) and not isinstance(i, bool) and 0 <= i < n for i in idx):
            raise SpecError("indices must lie in 0..%d" % (n - 1), where)
        mu[tuple(idx)] = _scalar(entry[3], where + "[3]")
    alpha = _square(data["alpha"], n, "alpha")
    unit = None
    if data.get("unit") is not None:
        u = data["unit"]
        if not isinstance(u, list) or len(u) != n:
            raise SpecError("unit must have %d entries" % n, "unit")
        unit = linalg.vector([_scalar(x, "unit[%d]" % i) for i, x in enumerate(u)])
    theta = None
    if data.get("theta") is not None:
        theta = _square(data["theta"], n, "theta")
    alg = HomAlgebra(mu, alpha, unit=unit, labels=labels, name=name)
    return AlgebraSpec(name, alg, theta, source)


def load_spec(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError("cannot read %s (%s)" % (path, exc.strerror)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, "line %d column %d" % (exc.lineno, exc.colno)) from None
    return parse_spec(data, str(path))


def dump_spec(alg, theta=None):
    """Inverse of :func:`parse_spec` (zero structure constants omitted)."""
    n = alg.dim
    mu = [[i, j, k, linalg.qstr(alg.mu[i, j, k])]
          for i in range(n) for j in range(n) for k in range(n) if alg.mu[i, j, k] != 0]
    out = {"name": alg.name, "dim": n, "labels": list(alg.labels), "mu": mu,
           "alpha": [[linalg.qstr(x) for x in row] for row in alg.alpha.tolist()]}
    if alg.unit is not None:
        out["unit"] = [linalg.qstr(x) for x in alg.unit]
    if theta is not None:
        out["theta"] = [[linalg.qstr(x) for x in row] for row in linalg.matrix(theta).tolist()]
    return out


def fixtures_dir():
    return resources.files("homcalc") / "fixtures"


def fixture_names(directory=None):
    d = Path(directory) if directory else Path(str(fixtures_dir()))
    return sorted(p.stem for p in d.glob("*.json"))


def load_fixture(name, directory=None):
    d = Path(directory) if directory else Path(str(fixtures_dir()))
    return load_spec(d / ("%s.json" % name))
