"""Regenerate src/higherym/configs/*.toml from the instance builders."""

from __future__ import annotations

import os

from higherym import instances
from higherym.config import SCHEMA

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "higherym", "configs")


def fmt_rat(x) -> str:
    return f'"{x}"'


def tensor_entries(tensor, restrict_upper=False):
    rows = []
    for a, plane in enumerate(tensor):
        for b, row in enumerate(plane):
            if restrict_upper and a >= b:
                continue
            for k, v in enumerate(row):
                if v != 0:
                    rows.append(f"[{a}, {b}, {k}, {fmt_rat(v)}]")
    return rows


def matrix_lines(m):
    return (
        "["
        + ", ".join("[" + ", ".join(fmt_rat(x) for x in row) + "]" for row in m)
        + "]"
    )


def algebra_block(leg, algebra):
    lines = [f"[algebras.{leg}]", f"dim = {algebra.dim}"]
    entries = tensor_entries(algebra.structure, restrict_upper=True)
    if entries:
        lines.append("brackets = [")
        lines.extend(f"    {e}," for e in entries)
        lines.append("]")
    else:
        lines.append("brackets = []")
    return lines


def differential_blocks(data):
    M = data.module
    lines = []
    lines += algebra_block("g", M.g) + [""]
    lines += algebra_block("h", M.h) + [""]
    lines += algebra_block("l", M.l) + [""]
    maps = []
    if any(x != 0 for row in M.alpha for x in row):
        maps.append("alpha = " + matrix_lines(M.alpha))
    if any(x != 0 for row in M.beta for x in row):
        maps.append("beta = " + matrix_lines(M.beta))
    if maps:
        lines += ["[maps]"] + maps + [""]
    actions = []
    for key, tensor in (("g_on_h", M.act_g_on_h), ("g_on_l", M.act_g_on_l)):
        entries = tensor_entries(tensor)
        if entries:
            actions.append(f"{key} = [")
            actions.extend(f"    {e}," for e in entries)
            actions.append("]")
    if actions:
        lines += ["[actions]"] + actions + [""]
    entries = tensor_entries(M.peiffer_tensor)
    if entries:
        lines += ["[peiffer]", "entries = ["]
        lines += [f"    {e}," for e in entries]
        lines += ["]", ""]
    gauge = []
    if data.alpha_right_inverse is not None:
        gauge.append("alpha_right_inverse = " + matrix_lines(data.alpha_right_inverse))
    if data.beta_right_inverse is not None:
        gauge.append("beta_right_inverse = " + matrix_lines(data.beta_right_inverse))
    if gauge:
        lines += ["[gauge]"] + gauge + [""]
    if data.rep_g is not None:
        lines += ["[rep]"]
        for leg, rep in (("g", data.rep_g), ("h", data.rep_h)):
            if rep is None:
                continue
            lines.append(f"{leg} = [")
            for m in rep.matrices:
                lines.append(f"    {matrix_lines(m)},")
            lines.append("]")
        lines.append("")
    if data.reduction:
        lines += ["[reduction]", f'target = "{data.reduction}"', ""]
    return lines


def finite_blocks(mod):
    def table_lines(key, table):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in table)
        return f"{key} = [{body}]"

    lines = []
    for leg, grp in (("L", mod.L), ("H", mod.H), ("G", mod.G)):
        lines += [f"[finite.groups.{leg}]", table_lines("table", grp.table), ""]
    lines += [
        "[finite.maps]",
        "beta = [" + ", ".join(str(x) for x in mod.beta) + "]",
        "alpha = [" + ", ".join(str(x) for x in mod.alpha) + "]",
        "",
        "[finite.actions]",
        table_lines("g_on_l", mod.act_on_l),
        table_lines("g_on_h", mod.act_on_h),
        "",
        "[finite.peiffer_lift]",
        table_lines("table", mod.peiffer_lift),
        "",
    ]
    return lines


def write_config(filename, name, diff_data=None, finite_mod=None):
    lines = [f'schema = "{SCHEMA}"', f'name = "{name}"', "", "[ambient]", "dim = 4", ""]
    if diff_data is not None:
        lines += differential_blocks(diff_data)
    if finite_mod is not None:
        lines += finite_blocks(finite_mod)
    path = os.path.join(OUT, filename)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines).rstrip() + "\n")
    print("wrote", path)


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, builder in instances.DIFFERENTIAL_BUILDERS.items():
        write_config(f"{name}.toml", name, diff_data=builder())
    for name, builder in instances.FINITE_BUILDERS.items():
        write_config(f"{name}.toml", name, finite_mod=builder())
    write_config(
        "full-demo.toml",
        "full-demo",
        diff_data=instances.e2_cone(),
        finite_mod=instances.finite_s3_lift(),
    )


if __name__ == "__main__":
    main()
