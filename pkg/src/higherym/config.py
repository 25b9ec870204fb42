"""TOML instance configs: schema validation and construction.

A config declares the three algebras with structure constants, the two
maps, the action tensors, the Peiffer tensor, and optional extras (matrix
representations, right inverses, explicit Gram matrices, axiom toggles, a
reduction target, and finite group tables).  Rationals are written as
strings like "-3/4"; structure entries are given for a < b only.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .algebra import LieAlgebra, tensor_from_entries
from .crossed import ALL_AXIOMS, DifferentialTwoCrossedModule
from .forms import MatrixRep
from .groups import FiniteGroup, FiniteTwoCrossedGroupModule, GroupTableError
from .instances import InstanceData
from .invariants import InvariantFormTriple, project_invariant
from .linalg import Mat, mat
from .reductions import REDUCTION_TARGETS

SCHEMA = "higherym/instance-v1"


class ConfigError(ValueError):
    """Schema violation; the message names the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class LoadedConfig:
    name: str
    dim: int
    data: InstanceData
    explicit_grams: tuple[Mat, Mat, Mat] | None
    seed_grams: tuple[Mat, Mat, Mat] | None
    a_wedge_a: str
    default_seeds: int
    default_degree_cap: int
    source: str

    def invariant_triple(self) -> InvariantFormTriple:
        if self.data.module is None:
            raise ConfigError("algebras", "config has no differential section")
        if self.explicit_grams is not None:
            return InvariantFormTriple.from_grams(self.data.module, *self.explicit_grams)
        if self.seed_grams is not None:
            return project_invariant(self.data.module, *self.seed_grams)
        return project_invariant(self.data.module)


def _need(table: dict, key: str, path: str):
    if key not in table:
        raise ConfigError(f"{path}.{key}", "missing field")
    return table[key]


def _expect(value, types, path: str):
    if not isinstance(value, types):
        raise ConfigError(path, f"expected {types}, got {type(value).__name__}")
    return value


def _rational(value, path: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ConfigError(path, "rationals must be strings like '3/4' or integers")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(path, f"bad rational {value!r}: {exc}") from exc


def _entries(raw, path: str, arity: int = 4):
    out = []
    _expect(raw, list, path)
    for n, row in enumerate(raw):
        _expect(row, list, f"{path}[{n}]")
        if len(row) != arity:
            raise ConfigError(f"{path}[{n}]", f"expected {arity} entries")
        idx = [
            _expect(x, int, f"{path}[{n}][{k}]") for k, x in enumerate(row[:-1])
        ]
        out.append((*idx, _rational(row[-1], f"{path}[{n}][{arity - 1}]")))
    return out


def _matrix(raw, rows: int, cols: int, path: str) -> Mat:
    _expect(raw, list, path)
    if len(raw) != rows:
        raise ConfigError(path, f"expected {rows} rows, got {len(raw)}")
    data = []
    for n, row in enumerate(raw):
        _expect(row, list, f"{path}[{n}]")
        if len(row) != cols:
            raise ConfigError(f"{path}[{n}]", f"expected {cols} entries")
        data.append([_rational(x, f"{path}[{n}][{k}]") for k, x in enumerate(row)])
    return mat(data)


def _algebra(raw: dict, name: str, path: str) -> LieAlgebra:
    _expect(raw, dict, path)
    dim = _expect(_need(raw, "dim", path), int, f"{path}.dim")
    if dim < 0:
        raise ConfigError(f"{path}.dim", "dimension must be nonnegative")
    entries = _entries(raw.get("brackets", []), f"{path}.brackets")
    for a, b, k, _ in entries:
        if not (0 <= a < dim and 0 <= b < dim and 0 <= k < dim):
            raise ConfigError(f"{path}.brackets", f"index out of range in ({a},{b},{k})")
        if a >= b:
            raise ConfigError(f"{path}.brackets", "entries must have a < b")
    return LieAlgebra.from_brackets(name, dim, entries)


def _tensor(raw, d1: int, d2: int, d3: int, path: str):
    entries = _entries(raw, path)
    for i, j, k, _ in entries:
        if not (0 <= i < d1 and 0 <= j < d2 and 0 <= k < d3):
            raise ConfigError(path, f"index out of range in ({i},{j},{k})")
    return tensor_from_entries(d1, d2, d3, entries)


def _finite_group(raw: dict, path: str, name: str) -> FiniteGroup:
    table = _expect(_need(raw, "table", path), list, f"{path}.table")
    try:
        return FiniteGroup.from_table(name, table)
    except GroupTableError as exc:
        raise ConfigError(f"{path}.table", str(exc)) from exc


def _finite(raw: dict, path: str) -> FiniteTwoCrossedGroupModule:
    groups = _expect(_need(raw, "groups", path), dict, f"{path}.groups")
    parts = {}
    for leg in ("L", "H", "G"):
        parts[leg] = _finite_group(
            _expect(_need(groups, leg, f"{path}.groups"), dict, f"{path}.groups.{leg}"),
            f"{path}.groups.{leg}",
            leg,
        )
    maps = _expect(_need(raw, "maps", path), dict, f"{path}.maps")
    actions = _expect(_need(raw, "actions", path), dict, f"{path}.actions")
    lift = _expect(_need(raw, "peiffer_lift", path), dict, f"{path}.peiffer_lift")
    try:
        return FiniteTwoCrossedGroupModule.build(
            parts["L"],
            parts["H"],
            parts["G"],
            _need(maps, "beta", f"{path}.maps"),
            _need(maps, "alpha", f"{path}.maps"),
            _need(actions, "g_on_l", f"{path}.actions"),
            _need(actions, "g_on_h", f"{path}.actions"),
            _need(lift, "table", f"{path}.peiffer_lift"),
        )
    except GroupTableError as exc:
        raise ConfigError(path, str(exc)) from exc


def resolve_config_path(spec: str) -> str:
    """Resolve 'builtin:NAME' to the packaged config file."""
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        ref = resources.files("higherym.configs").joinpath(f"{name}.toml")
        if not ref.is_file():
            raise ConfigError("config", f"no builtin config named {name!r}")
        return str(ref)
    return spec


def load_config(path_spec: str) -> LoadedConfig:
    path = resolve_config_path(path_spec)
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError("config", f"parse error in {path}: {exc}") from exc

    if raw.get("schema") != SCHEMA:
        raise ConfigError("schema", f"expected {SCHEMA!r}")
    name = _expect(_need(raw, "name", ""), str, "name")
    ambient = _expect(raw.get("ambient", {}), dict, "ambient")
    dim = _expect(ambient.get("dim", 4), int, "ambient.dim")
    if dim < 1:
        raise ConfigError("ambient.dim", "must be >= 1")

    defaults = _expect(raw.get("defaults", {}), dict, "defaults")
    default_seeds = _expect(defaults.get("seeds", 50), int, "defaults.seeds")
    default_degree_cap = _expect(defaults.get("degree_cap", 3), int, "defaults.degree_cap")
    if default_seeds < 1 or default_degree_cap < 0:
        raise ConfigError("defaults", "seeds must be >= 1 and degree_cap >= 0")

    module = None
    reps = {"g": None, "h": None}
    alpha_rinv = beta_rinv = None
    disabled: tuple[str, ...] = ()
    reduction = None
    explicit_grams = None
    seed_grams = None
    a_wedge_a = "half-bracket"

    if "algebras" in raw:
        algebras = _expect(raw["algebras"], dict, "algebras")
        g = _algebra(_need(algebras, "g", "algebras"), "g", "algebras.g")
        h = _algebra(_need(algebras, "h", "algebras"), "h", "algebras.h")
        l = _algebra(_need(algebras, "l", "algebras"), "l", "algebras.l")
        maps = _expect(raw.get("maps", {}), dict, "maps")
        alpha = (
            _matrix(maps["alpha"], g.dim, h.dim, "maps.alpha")
            if "alpha" in maps
            else None
        )
        beta = (
            _matrix(maps["beta"], h.dim, l.dim, "maps.beta") if "beta" in maps else None
        )
        actions = _expect(raw.get("actions", {}), dict, "actions")
        act_h = (
            _tensor(actions["g_on_h"], g.dim, h.dim, h.dim, "actions.g_on_h")
            if "g_on_h" in actions
            else None
        )
        act_l = (
            _tensor(actions["g_on_l"], g.dim, l.dim, l.dim, "actions.g_on_l")
            if "g_on_l" in actions
            else None
        )
        peiffer = _expect(raw.get("peiffer", {}), dict, "peiffer")
        pt = (
            _tensor(peiffer["entries"], h.dim, h.dim, l.dim, "peiffer.entries")
            if "entries" in peiffer
            else None
        )
        module = DifferentialTwoCrossedModule.build(
            l=l, h=h, g=g, beta=beta, alpha=alpha,
            act_g_on_h=act_h, act_g_on_l=act_l, peiffer_tensor=pt,
        )

        axioms = _expect(raw.get("axioms", {}), dict, "axioms")
        disabled = tuple(
            _expect(x, str, "axioms.disabled[]") for x in axioms.get("disabled", [])
        )
        for ax in disabled:
            if ax not in ALL_AXIOMS:
                raise ConfigError("axioms.disabled", f"unknown axiom {ax!r}")

        rep_raw = _expect(raw.get("rep", {}), dict, "rep")
        for leg, algebra in (("g", g), ("h", h)):
            if leg in rep_raw:
                mats = [
                    _matrix(m, len(m), len(m), f"rep.{leg}[{n}]")
                    for n, m in enumerate(rep_raw[leg])
                ]
                reps[leg] = MatrixRep.build(algebra, mats)

        gauge_raw = _expect(raw.get("gauge", {}), dict, "gauge")
        if "alpha_right_inverse" in gauge_raw:
            alpha_rinv = _matrix(
                gauge_raw["alpha_right_inverse"], h.dim, g.dim, "gauge.alpha_right_inverse"
            )
        if "beta_right_inverse" in gauge_raw:
            beta_rinv = _matrix(
                gauge_raw["beta_right_inverse"], l.dim, h.dim, "gauge.beta_right_inverse"
            )
        a_wedge_a = gauge_raw.get("a_wedge_a", "matrix-rep" if reps["g"] else "half-bracket")
        if a_wedge_a not in ("half-bracket", "matrix-rep"):
            raise ConfigError("gauge.a_wedge_a", f"unknown policy {a_wedge_a!r}")
        if a_wedge_a == "matrix-rep" and reps["g"] is None:
            raise ConfigError(
                "gauge.a_wedge_a", "matrix-rep policy requires a [rep] g entry"
            )

        inv_raw = _expect(raw.get("invariants", {}), dict, "invariants")
        if any(k in inv_raw for k in ("gram_g", "gram_h", "gram_l")):
            explicit_grams = (
                _matrix(_need(inv_raw, "gram_g", "invariants"), g.dim, g.dim, "invariants.gram_g"),
                _matrix(_need(inv_raw, "gram_h", "invariants"), h.dim, h.dim, "invariants.gram_h"),
                _matrix(_need(inv_raw, "gram_l", "invariants"), l.dim, l.dim, "invariants.gram_l"),
            )
        if any(k in inv_raw for k in ("seed_gram_g", "seed_gram_h", "seed_gram_l")):
            if explicit_grams is not None:
                raise ConfigError(
                    "invariants", "give either explicit Grams or projection seeds, not both"
                )
            seed_grams = (
                _matrix(_need(inv_raw, "seed_gram_g", "invariants"), g.dim, g.dim, "invariants.seed_gram_g"),
                _matrix(_need(inv_raw, "seed_gram_h", "invariants"), h.dim, h.dim, "invariants.seed_gram_h"),
                _matrix(_need(inv_raw, "seed_gram_l", "invariants"), l.dim, l.dim, "invariants.seed_gram_l"),
            )

        red_raw = _expect(raw.get("reduction", {}), dict, "reduction")
        if "target" in red_raw:
            reduction = _expect(red_raw["target"], str, "reduction.target")
            if reduction not in REDUCTION_TARGETS:
                raise ConfigError("reduction.target", f"unknown target {reduction!r}")

    finite = _finite(raw["finite"], "finite") if "finite" in raw else None
    if module is None and finite is None:
        raise ConfigError("config", "config declares neither [algebras] nor [finite]")

    data = InstanceData(
        name=name,
        module=module,
        axioms_disabled=disabled,
        rep_g=reps["g"],
        rep_h=reps["h"],
        alpha_right_inverse=alpha_rinv,
        beta_right_inverse=beta_rinv,
        reduction=reduction,
        finite=finite,
    )
    return LoadedConfig(
        name=name,
        dim=dim,
        data=data,
        explicit_grams=explicit_grams,
        seed_grams=seed_grams,
        a_wedge_a=a_wedge_a,
        default_seeds=default_seeds,
        default_degree_cap=default_degree_cap,
        source=path,
    )
