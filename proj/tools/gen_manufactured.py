#!/usr/bin/env python3
"""Generate closed-form manufactured fields for the built-in cases.

Writes include/stis/manufactured_data.hpp. For every case and phase it emits
velocity, velocity gradient, time derivative, vector Laplacian, pressure and
pressure gradient. Forcing and interface jumps are combined from these in C++.

Usage: python3 tools/gen_manufactured.py [output]
"""

import pathlib
import sys

import sympy as sp

x, y, z, t = sp.symbols("x y z t", real=True)


def curl2(psi):
    return [sp.diff(psi, y), -sp.diff(psi, x)]


def disk2d():
    R = sp.Rational(1, 2)
    c = (t - sp.Rational(1, 2)) / 2
    B = (1 - x**2) ** 2 * (1 - y**2) ** 2
    r2 = x**2 + (y - c) ** 2
    smooth_psi = sp.sin(2 * t) * B * (1 + x / 2 + t * y / 2)
    smooth_p_neg = sp.Rational(96, 5) * sp.sin(2 * t) * x * y + 2 / R
    s = sp.Symbol("s")
    g_pos = sp.exp(-s) / 4
    g_neg = sp.exp(-R**2) * s / 4 + sp.exp(-s) / 2 - sp.exp(-R**2) * (1 + R**2) / 4
    assert sp.simplify((g_pos - g_neg).subs(s, R**2)) == 0
    assert sp.simplify(sp.diff(g_pos - g_neg, s).subs(s, R**2)) == 0
    kink = {
        "neg": (curl2(sp.sin(2 * t) * B * g_neg.subs(s, r2)), 2 / R),
        "pos": (curl2(sp.sin(2 * t) * B * g_pos.subs(s, r2)), sp.Integer(0)),
    }
    smooth = {
        "neg": (curl2(smooth_psi), smooth_p_neg),
        "pos": (curl2(smooth_psi), sp.Integer(0)),
    }
    poly_u = [t * (x**2 + y), t * (-2 * x * y + x)]
    poly = {"neg": (poly_u, (1 + t) * x), "pos": (poly_u, (1 + t) * x)}
    return {"disk2d_smooth": smooth, "disk2d_kink": kink, "poly2d": poly}


def paper3d():
    s2 = sp.sin(2 * t)
    u1 = [
        s2 * sp.Rational(1, 5) * (x**2 + 5 * y**2 - 10 * t * z + 5 * z**2) * y,
        s2 * sp.Rational(1, 5) * (10 * t**2 + 5 * x**2 + y**2 - 10 * t * z + 5 * z**2 - 8) * x,
        s2 * sp.Rational(4, 5) * (t - z) * x * y,
    ]
    p1_neg = sp.Rational(96, 5) * s2 * x * y + 2 * sp.sqrt(2)
    e = sp.exp(-((t - z) ** 2) - x**2 - y**2)
    rot = [-y, x, sp.Integer(0)]
    u2_pos = [s2 * r * e / 2 for r in rot]
    u2_neg = [s2 * r * (-sp.exp(-sp.Rational(1, 2)) / 2 + e) for r in rot]
    return {
        "paper3d_case1": {"neg": (u1, p1_neg), "pos": (u1, sp.Integer(0))},
        "paper3d_case2": {"neg": (u2_neg, 2 * sp.sqrt(2)), "pos": (u2_pos, sp.Integer(0))},
    }


def emit(name, phase, u, p, coords):
    d = len(coords)
    exprs = []
    targets = []
    for i in range(d):
        exprs.append(u[i])
        targets.append(f"f.u[{i}]")
    for i in range(d):
        for j in range(d):
            exprs.append(sp.diff(u[i], coords[j]))
            targets.append(f"f.grad_u({i}, {j})")
    for i in range(d):
        exprs.append(sp.diff(u[i], t))
        targets.append(f"f.dt_u[{i}]")
    for i in range(d):
        exprs.append(sum(sp.diff(u[i], c, 2) for c in coords))
        targets.append(f"f.lap_u[{i}]")
    exprs.append(p)
    targets.append("f.p")
    for j in range(d):
        exprs.append(sp.diff(p, coords[j]))
        targets.append(f"f.grad_p[{j}]")
    div = sp.simplify(sum(sp.diff(u[i], coords[i]) for i in range(d)))
    assert div == 0, f"{name}/{phase}: velocity is not divergence free"

    subs, reduced = sp.cse(exprs, symbols=sp.numbered_symbols("c"))
    args = ", ".join(f"double {c}" for c in coords)
    lines = [f"inline void {name}_{phase}({args}, double t, FieldValues<{d}>& f) {{"]
    for sym, val in subs:
        lines.append(f"  const double {sym} = {sp.ccode(val)};")
    for tgt, val in zip(targets, reduced):
        lines.append(f"  {tgt} = {sp.ccode(val)};")
    lines.append("}")
    return "\n".join(lines)


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else root / "include/stis/manufactured_data.hpp"
    parts = [
        "/// \\file manufactured_data.hpp",
        "/// \\brief Closed-form exact fields of the built-in cases.",
        "///",
        "/// Generated by tools/gen_manufactured.py; do not edit.",
        "",
        "#pragma once",
        "",
        '#include "stis/field_values.hpp"',
        "",
        "#include <cmath>",
        "",
        "namespace stis::manufactured {",
        "",
    ]
    for name, phases in disk2d().items():
        for phase, (u, p) in phases.items():
            parts.append(emit(name, phase, u, p, [x, y]))
            parts.append("")
    for name, phases in paper3d().items():
        for phase, (u, p) in phases.items():
            parts.append(emit(name, phase, u, p, [x, y, z]))
            parts.append("")
    parts.append("}  // namespace stis::manufactured")
    out.write_text("\n".join(parts) + "\n")


if __name__ == "__main__":
    main()
