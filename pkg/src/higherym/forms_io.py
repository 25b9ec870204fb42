"""Text serialization for algebra-valued forms.

One record per (index tuple, basis index, monomial): strictly increasing
indices, the basis slot, the exponent vector and the rational coefficient,
separated by '|'.  A connection file carries three blocks named a, b, c.

    form a dim=4 degree=1 algebra=g nvars=4
    0 | 0 | 1 0 0 0 | 3/2
    end
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import LieAlgebra, StructureError
from .crossed import DifferentialTwoCrossedModule
from .forms import AlgebraValuedForm, SCALAR
from .gauge import ThreeConnection
from .polynomial import Polynomial


class FormFileError(ValueError):
    pass


def dump_form(w: AlgebraValuedForm, name: str, role: str) -> str:
    lines = [
        f"form {name} dim={w.dim} degree={w.degree} algebra={role} nvars={w.nvars}"
    ]
    for idx in sorted(w.components):
        vec = w.components[idx]
        idx_s = ",".join(str(i) for i in idx) if idx else "-"
        for a, p in enumerate(vec):
            for exps, coeff in sorted(p.terms.items()):
                e_s = " ".join(str(e) for e in exps)
                lines.append(f"{idx_s} | {a} | {e_s} | {coeff}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def _parse_header(line: str) -> tuple[str, dict[str, str]]:
    parts = line.split()
    if not parts or parts[0] != "form" or len(parts) < 2:
        raise FormFileError(f"bad form header: {line!r}")
    fields = {}
    for token in parts[2:]:
        if "=" not in token:
            raise FormFileError(f"bad header field {token!r}")
        k, v = token.split("=", 1)
        fields[k] = v
    return parts[1], fields


def parse_forms(text: str) -> dict[str, tuple[dict, dict]]:
    """Raw parse: name -> (header fields, {(idx, basis) -> {exps: coeff}})."""
    out: dict[str, tuple[dict, dict]] = {}
    current: str | None = None
    fields: dict[str, str] = {}
    records: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("form "):
            if current is not None:
                raise FormFileError(f"line {lineno}: nested form block")
            current, fields = _parse_header(line)
            records = {}
            continue
        if line == "end":
            if current is None:
                raise FormFileError(f"line {lineno}: stray end")
            out[current] = (fields, records)
            current = None
            continue
        if current is None:
            raise FormFileError(f"line {lineno}: record outside form block")
        bits = [b.strip() for b in line.split("|")]
        if len(bits) != 4:
            raise FormFileError(f"line {lineno}: expected 4 fields")
        idx = () if bits[0] == "-" else tuple(int(x) for x in bits[0].split(","))
        basis = int(bits[1])
        exps = tuple(int(x) for x in bits[2].split()) if bits[2] else ()
        coeff = Fraction(bits[3])
        records.setdefault((idx, basis), {})
        records[(idx, basis)][exps] = records[(idx, basis)].get(exps, Fraction(0)) + coeff
    if current is not None:
        raise FormFileError("unterminated form block")
    return out


def build_form(
    fields: dict, records: dict, algebra: LieAlgebra
) -> AlgebraValuedForm:
    dim = int(fields["dim"])
    degree = int(fields["degree"])
    nvars = int(fields.get("nvars", dim))
    comps: dict[tuple[int, ...], list[Polynomial]] = {}
    for (idx, basis), terms in records.items():
        if basis < 0 or basis >= algebra.dim:
            raise FormFileError(f"basis index {basis} out of range for {algebra.name}")
        vec = comps.setdefault(idx, [Polynomial.zero(nvars)] * algebra.dim)
        if any(len(e) != nvars for e in terms):
            raise FormFileError("exponent vector length does not match nvars")
        vec[basis] = vec[basis] + Polynomial(nvars, terms)
    return AlgebraValuedForm(
        dim, degree, algebra, {i: tuple(v) for i, v in comps.items()}, nvars
    )


def save_connection(conn: ThreeConnection, path: str):
    text = (
        dump_form(conn.a, "a", "g")
        + dump_form(conn.b, "b", "h")
        + dump_form(conn.c, "c", "l")
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def load_connection(M: DifferentialTwoCrossedModule, path: str) -> ThreeConnection:
    with open(path, encoding="utf-8") as fh:
        blocks = parse_forms(fh.read())
    roles = {"g": M.g, "h": M.h, "l": M.l, "scalar": SCALAR}
    forms = {}
    for name in ("a", "b", "c"):
        if name not in blocks:
            raise FormFileError(f"connection file lacks form {name!r}")
        fields, records = blocks[name]
        role = fields.get("algebra")
        if role not in roles:
            raise FormFileError(f"unknown algebra role {role!r}")
        forms[name] = build_form(fields, records, roles[role])
    try:
        return ThreeConnection(forms["a"], forms["b"], forms["c"])
    except StructureError as exc:
        raise FormFileError(str(exc)) from exc
