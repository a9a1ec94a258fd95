"""Instance text format: three sections of ``key = value`` lines.

    [space]
    kind = finite
    points = [a, b, c]
    generators = [[a]]
    weights = [1, 2, 0]

    [codomain]
    kind = rational-line

    [function]
    a = 0, b = 1, c = 2

Fixtures can stand in for a whole section (``space = FIX2`` on its own
line, outside any section).  Values are integers, rationals ``p/q``,
``inf``, point names or bracketed lists.  ``#`` starts a comment.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .extreal import INF, fmt
from .fixtures import NAMES, fixture
from .func import Affine, Constant, FuncError, Periodic, SequenceFunc, TableFunc
from .space import FieldCapError, FinCofNat, FiniteExplicit, SpaceError
from .uniform import CodomainError, FiniteMetric, Product, PseudometricFamily, RationalLine, WeakFamily


class InstanceError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line else msg)


_INT = re.compile(r"[+-]?\d+$")
_RAT = re.compile(r"[+-]?\d+/\d+$")


def _atom(tok: str):
    tok = tok.strip()
    if _INT.match(tok):
        return int(tok)
    if _RAT.match(tok):
        return Fraction(tok)
    if tok in ("inf", "∞"):
        return INF
    if not tok:
        raise ValueError("empty value")
    return tok


def parse_value(text: str):
    """Atoms, ``[...]`` lists and ``(...)`` tuples, nested."""
    pos = 0
    text = text.strip()

    def item():
        nonlocal pos
        while pos < len(text) and text[pos] == " ":
            pos += 1
        if pos < len(text) and text[pos] in "[(":
            close = "]" if text[pos] == "[" else ")"
            pos += 1
            out = []
            while True:
                while pos < len(text) and text[pos] == " ":
                    pos += 1
                if pos < len(text) and text[pos] == close:
                    pos += 1
                    break
                out.append(item())
                while pos < len(text) and text[pos] == " ":
                    pos += 1
                if pos < len(text) and text[pos] == ",":
                    pos += 1
                elif pos < len(text) and text[pos] == close:
                    continue
                else:
                    raise ValueError(f"expected ',' or '{close}'")
            return out if close == "]" else tuple(out)
        start = pos
        while pos < len(text) and text[pos] not in ",])":
            pos += 1
        return _atom(text[start:pos])

    val = item()
    if text[pos:].strip():
        raise ValueError(f"trailing text {text[pos:]!r}")
    return val


def _split_pairs(line: str) -> list[str]:
    """Split ``a = 0, b = 1`` at top-level commas (only when several ``=``)."""
    if line.count("=") <= 1:
        return [line]
    parts, depth, cur = [], 0, ""
    for ch in line:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


SECTIONS = ("space", "codomain", "function")


def _read_doc(text: str) -> dict:
    doc = {s: None for s in SECTIONS}
    current = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            name = m.group(1)
            if name not in SECTIONS:
                raise InstanceError(f"unknown section [{name}]", no)
            if doc[name] is not None:
                raise InstanceError(f"duplicate section [{name}]", no)
            doc[name] = {"line": no, "items": []}
            current = name
            continue
        for part in _split_pairs(line):
            if "=" not in part:
                raise InstanceError(f"expected 'key = value', got {part.strip()!r}", no)
            key, val = (s.strip() for s in part.split("=", 1))
            if current is None:
                if key not in SECTIONS:
                    raise InstanceError(f"unknown key {key!r} outside a section", no)
                if doc[key] is not None:
                    raise InstanceError(f"duplicate {key}", no)
                doc[key] = {"line": no, "ref": val}
                continue
            doc[current]["items"].append((key, val, no))
    for s in SECTIONS:
        if doc[s] is None:
            raise InstanceError(f"missing {s}")
    return doc


def _fixture_part(ref: str, which: int, no: int):
    name = ref.upper()
    if name not in NAMES:
        raise InstanceError(f"unknown fixture {ref!r}", no)
    part = fixture(name)[which]
    if part is None:
        raise InstanceError(f"{name} has no {SECTIONS[which]}", no)
    return part


def _values(items, allowed, section, raw=()) -> dict:
    out = {}
    seen = set()
    for key, val, no in items:
        if key not in allowed:
            raise InstanceError(f"unknown key {key!r} in [{section}]", no)
        if key in seen:
            raise InstanceError(f"duplicate key {key!r}", no)
        seen.add(key)
        if key in raw:
            out[key] = (val, no)
            continue
        try:
            out[key] = (parse_value(val), no)
        except ValueError as exc:
            raise InstanceError(f"bad value for {key}: {exc}", no) from None
    return out


def _need(vals, key, sec_line, section):
    if key not in vals:
        raise InstanceError(f"[{section}] needs {key!r}", sec_line)
    return vals[key]


def _build_space(sec):
    if "ref" in sec:
        return _fixture_part(sec["ref"], 0, sec["line"])
    vals = _values(sec["items"], {"kind", "points", "generators", "weights", "prefix", "winf", "minf", "name"}, "space")
    kind, kno = _need(vals, "kind", sec["line"], "space")
    try:
        if kind == "finite":
            pts, _ = _need(vals, "points", sec["line"], "space")
            gens, _ = vals.get("generators", ([], None))
            w, wno = vals.get("weights", ([0] * len(pts), None))
            if not isinstance(pts, list) or not isinstance(gens, list) or not isinstance(w, list):
                raise InstanceError("points, generators and weights must be lists", kno)
            if len(w) != len(pts):
                raise InstanceError("weights must list one value per point", wno)
            return FiniteExplicit(pts, gens, list(w))
        if kind == "fincof":
            prefix, pno = vals.get("prefix", ([], sec["line"]))
            winf, wno = vals.get("winf", (0, sec["line"]))
            minf, mno = vals.get("minf", (0, sec["line"]))
            if not isinstance(prefix, list):
                raise InstanceError("prefix must be a list", pno)
            for w, no, allow_inf in [(w, pno, False) for w in prefix] + [(winf, wno, False), (minf, mno, True)]:
                if not isinstance(w, (int, Fraction)) and not (allow_inf and w == INF):
                    raise InstanceError(f"{w!r} is not a nonnegative rational", no)
                if w < 0:
                    raise InstanceError(f"weight {fmt(w)} is negative", no)
            return FinCofNat(prefix, winf, minf)
    except FieldCapError:
        raise
    except (SpaceError, TypeError) as exc:
        raise InstanceError(str(exc), kno) from None
    raise InstanceError(f"unknown space kind {kind!r}", kno)


def _codomain_from(vals, line, section="codomain"):
    kind, kno = _need(vals, "kind", line, section)
    try:
        if kind == "rational-line":
            return RationalLine()
        if kind == "FIX7" or kind == "fix7":
            return _fixture_part("FIX7", 1, kno)
        if kind == "metric":
            pts, _ = _need(vals, "points", line, section)
            d, _ = _need(vals, "dist", line, section)
            return FiniteMetric([str(p) for p in pts], d)
        if kind == "pseudometrics":
            pts, _ = _need(vals, "points", line, section)
            ds, _ = _need(vals, "dists", line, section)
            return PseudometricFamily([str(p) for p in pts], ds)
        if kind == "weak":
            pts, _ = _need(vals, "points", line, section)
            t, _ = _need(vals, "tables", line, section)
            return WeakFamily([str(p) for p in pts], t)
        if kind == "product":
            n, _ = _need(vals, "factors", line, section)
            factors = []
            for i in range(n):
                sub = {k.split(".", 1)[1]: v for k, v in vals.items() if k.startswith(f"factor{i}.")}
                factors.append(_codomain_from(sub, line, f"{section}.factor{i}"))
            return Product(factors)
    except (CodomainError, TypeError, ValueError) as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(str(exc), kno) from None
    raise InstanceError(f"unknown codomain kind {kind!r}", kno)


def _build_codomain(sec):
    if "ref" in sec:
        ref = sec["ref"]
        if ref == "rational-line":
            return RationalLine()
        return _fixture_part(ref, 1, sec["line"])
    vals = {}
    seen = set()
    for key, val, no in sec["items"]:
        base = key.split(".", 1)[1] if key.startswith("factor") and "." in key else key
        if base not in {"kind", "points", "dist", "dists", "tables", "factors"}:
            raise InstanceError(f"unknown key {key!r} in [codomain]", no)
        if key in seen:
            raise InstanceError(f"duplicate key {key!r}", no)
        seen.add(key)
        try:
            vals[key] = (parse_value(val), no)
        except ValueError as exc:
            raise InstanceError(f"bad value for {key}: {exc}", no) from None
    return _codomain_from(vals, sec["line"])


def _point(cod, raw, no):
    try:
        if isinstance(cod, RationalLine):
            if isinstance(raw, (int, Fraction)) and raw != INF:
                return Fraction(raw)
            raise CodomainError(f"{raw!r} is not a rational")
        return cod.parse_point(raw if isinstance(raw, (list, tuple)) else str(raw))
    except CodomainError as exc:
        raise InstanceError(str(exc), no) from None


def _build_function(sec, space, cod):
    if "ref" in sec:
        f = _fixture_part(sec["ref"], 2, sec["line"])
        if f.space != space or f.codomain != cod:
            raise InstanceError(f"{sec['ref']} does not match the given space and codomain", sec["line"])
        return f
    try:
        if isinstance(space, FiniteExplicit):
            table = {}
            labels = {str(p): p for p in space.points}
            for key, val, no in sec["items"]:
                if key not in labels:
                    raise InstanceError(f"{key!r} is not a ground point", no)
                if labels[key] in table:
                    raise InstanceError(f"duplicate value for {key!r}", no)
                try:
                    table[labels[key]] = _point(cod, parse_value(val), no)
                except ValueError as exc:
                    raise InstanceError(str(exc), no) from None
            missing = [p for p in space.points if p not in table]
            if missing:
                raise InstanceError(f"function is missing points {missing}", sec["line"])
            return TableFunc(space, cod, table)
        vals = _values(sec["items"], {"prefix", "tail"}, "function", raw=("tail",))
        prefix, pno = vals.get("prefix", ([], sec["line"]))
        prefix = [_point(cod, v, pno) for v in prefix]
        if "tail" not in vals:
            raise InstanceError("[function] needs 'tail'", sec["line"])
        tail = _parse_tail(sec, cod)
        return SequenceFunc(space, cod, prefix, tail)
    except FuncError as exc:
        raise InstanceError(str(exc), sec["line"]) from None


def _parse_tail(sec, cod):
    for key, val, no in sec["items"]:
        if key != "tail":
            continue
        word, _, rest = val.strip().partition(" ")
        try:
            if word == "constant":
                return Constant(_point(cod, parse_value(rest), no))
            if word == "periodic":
                vs = parse_value(rest)
                if not isinstance(vs, list):
                    raise InstanceError("periodic tail needs a list", no)
                return Periodic(tuple(_point(cod, v, no) for v in vs))
            if word == "affine":
                a, b = rest.split()
                return Affine(Fraction(a), Fraction(b))
        except ValueError as exc:
            if isinstance(exc, InstanceError):
                raise
            raise InstanceError(f"bad tail: {exc}", no) from None
        raise InstanceError(f"unknown tail form {word!r}", no)


def parse_instance(text: str):
    """``(space, codomain, f)`` from instance text."""
    doc = _read_doc(text)
    space = _build_space(doc["space"])
    cod = _build_codomain(doc["codomain"])
    f = _build_function(doc["function"], space, cod)
    return space, cod, f


# -- serialization -----------------------------------------------------------------------

def _list(xs) -> str:
    return "[" + ", ".join(xs) + "]"


def _codomain_lines(cod, prefix="") -> list[str]:
    if isinstance(cod, RationalLine):
        return [f"{prefix}kind = rational-line"]
    if isinstance(cod, FiniteMetric):
        rows = _list(_list(fmt(x) for x in row) for row in cod.matrix)
        return [f"{prefix}kind = metric", f"{prefix}points = {_list(map(str, cod.points))}", f"{prefix}dist = {rows}"]
    if isinstance(cod, PseudometricFamily):
        mats = _list(_list(_list(fmt(x) for x in row) for row in m.matrix) for m in cod.members)
        return [f"{prefix}kind = pseudometrics", f"{prefix}points = {_list(map(str, cod.points))}", f"{prefix}dists = {mats}"]
    if isinstance(cod, WeakFamily):
        tables = _list(_list(fmt(t[p]) for p in cod.points) for t in cod.tables)
        return [f"{prefix}kind = weak", f"{prefix}points = {_list(map(str, cod.points))}", f"{prefix}tables = {tables}"]
    if isinstance(cod, Product):
        if prefix:
            raise ValueError("nested products are not serializable")
        out = ["kind = product", f"factors = {len(cod.factors)}"]
        for i, c in enumerate(cod.factors):
            out += _codomain_lines(c, f"factor{i}.")
        return out
    raise TypeError(f"cannot serialize {cod!r}")


def dump_instance(space, cod, f) -> str:
    fp = cod.format_point
    lines = ["[space]"]
    if isinstance(space, FiniteExplicit):
        gens = _list(_list(str(p) for p in space.points if p in a) for a in space.atoms)
        lines += [
            "kind = finite",
            f"points = {_list(map(str, space.points))}",
            f"generators = {gens}",
            f"weights = {_list(fmt(space.weights[p]) for p in space.points)}",
        ]
    else:
        lines += [
            "kind = fincof",
            f"prefix = {_list(fmt(w) for w in space.prefix)}",
            f"winf = {fmt(space.w_inf)}",
            f"minf = {fmt(space.m_inf)}",
        ]
    lines += ["", "[codomain]"] + _codomain_lines(cod) + ["", "[function]"]
    if isinstance(f, TableFunc):
        lines += [f"{p} = {fp(v)}" for p, v in f.table.items()]
    else:
        lines += [f"prefix = {_list(fp(v) for v in f.prefix)}", f"tail = {f.tail_text()}"]
    return "\n".join(lines) + "\n"
