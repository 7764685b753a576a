"""Command-line front end.

Exit status: 0 when every check passed, 1 when a mathematical check failed,
2 for usage or input errors.  JSON output carries ``"schema": "qpw/1"``.
"""
from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import exactmat
from .cyclo import PowerScalar
from .mbf import MBF
from .mra import Decomposition, check_refinement, decompose, gram_matrix, reconstruct
from .padic import enumerate_Ip
from .psdo import NotLizorkinError, apply, eigen_report, parse_symbol
from .wavelets import (
    REAL_PRESETS,
    GammaVector,
    WaveletIndex,
    alpha_coeffs,
    alpha_coeffs_float,
    enumerate_basis,
    is_unitary,
    is_unitary_float,
    kozyrev,
    psi0,
    psi_s,
    real_alpha,
    real_gammas,
    shift_matrix_D,
    shift_matrix_D_float,
    tensor_wavelet,
)

try:  # Python >= 3.11
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

SCHEMA = "qpw/1"


class UsageError(Exception):
    pass


# -- parsing helpers ----------------------------------------------------


def _int_list(text: str) -> list[int]:
    text = str(text).strip()
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _frac_list(text: str) -> list[Fraction]:
    return [Fraction(x.strip()) for x in str(text).split(",") if x.strip()]


def _float_list(text: str) -> list[float]:
    return [float(x) for x in str(text).split(",") if x.strip()]


def _fr(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _scalar_report(c) -> dict:
    if isinstance(c, PowerScalar):
        re, im = c.to_float()
        return {"exact": {"c": c.c.to_json(), "w": [_fr(c.w_re), _fr(c.w_im)]}, "float": [re, im]}
    re, im = c.to_float()
    return {"exact": c.to_json(), "float": [re, im]}


def _gamma_vectors(args, s_vec: list[int]) -> list:
    out = []
    raw = args.gamma_angles
    per_coord = str(raw).split(";") if raw else []
    for nu, s in enumerate(s_vec):
        if s == 0:
            out.append(None)
            continue
        if not per_coord:
            raise UsageError(f"coordinate {nu + 1} has s={s} but no --gamma-angles were given")
        text = per_coord[nu] if len(per_coord) > 1 else per_coord[0]
        angles = _frac_list(text)
        if len(angles) != 2**s:
            raise UsageError(f"s={s} needs {2**s} gamma angles, got {len(angles)}")
        out.append(GammaVector.from_angles(s, angles))
    return out


def _psi_from_args(args) -> MBF:
    s = int(args.s.split(",")[0]) if args.s else 0
    if s == 0:
        return psi0()
    return psi_s(_gamma_vectors(args, [s])[0])


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _emit(args, payload: dict, rows: list[dict] | None = None):
    if args.format == "csv":
        if rows is None:
            raise UsageError("this command has no CSV view")
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- basis construction shared by gen-basis / check-orthonormal -----------


def _basis(args):
    p, n = args.p, args.n
    j_range = _int_list(args.j_range)
    if p == 2:
        s_vec = [int(x) for x in args.s.split(",")] if args.s else [0] * n
        if len(s_vec) == 1 and n > 1:
            s_vec = s_vec * n
        if len(s_vec) != n:
            raise UsageError("--s needs one entry per coordinate")
        gammas = _gamma_vectors(args, s_vec)
        idxs = enumerate_basis(2, n, j_range, args.gamma_max, s_vec, gammas)
        return [(i.to_json(), tensor_wavelet(i)) for i in idxs]
    if n != 1:
        raise UsageError("for p > 2 only the one-dimensional Kozyrev basis is available")
    out = []
    for j in j_range:
        for k in range(1, p):
            for (a,) in enumerate_Ip(p, args.gamma_max, 1):
                out.append(({"p": p, "n": 1, "k": k, "j": j, "a": [str(a)]}, kozyrev(p, k, j, a)))
    return out


def cmd_gen_basis(args) -> int:
    basis = _basis(args)
    payload = {"command": "gen-basis", "basis": [{"index": idx, "mbf": f.to_json()} for idx, f in basis]}
    rows = []
    for pos, (idx, f) in enumerate(basis):
        rows.append(
            {
                "row": pos,
                "j": idx["j"],
                "e": " ".join(str(x) for x in idx.get("e", [])),
                "k": idx.get("k", ""),
                "a": " ".join(idx["a"]),
                "s": " ".join(str(x) for x in idx.get("s", [])),
                "terms": len(f),
                "mbf_ref": f"basis[{pos}].mbf",
            }
        )
    _emit(args, payload, rows)
    return 0


def cmd_check_orthonormal(args) -> int:
    basis = _basis(args)
    fs = [f for _, f in basis]
    if args.scale is not None and fs:
        fs[0] = fs[0].scale(Fraction(args.scale))
    g = gram_matrix(fs)
    ok = exactmat.is_identity(g)
    bad = [
        {"row": i, "col": k, "value": _scalar_report(g[i][k])}
        for i in range(len(g))
        for k in range(len(g))
        if not ((g[i][k] == 1) if i == k else g[i][k].is_zero())
    ]
    payload = {"command": "check-orthonormal", "size": len(fs), "identity": ok, "violations": bad[:20]}
    _emit(args, payload, [{"size": len(fs), "identity": ok, "violations": len(bad)}])
    return 0 if ok else 1


def cmd_check_refinement(args) -> int:
    ok = check_refinement(args.p)
    payload = {"command": "check-refinement", "p": args.p, "identity holds": ok}
    _emit(args, payload, [{"p": args.p, "identity_holds": ok}])
    return 0 if ok else 1


def cmd_check_unitary(args) -> int:
    s = int(args.s or 1)
    if args.gamma_float:
        turns = _float_list(args.gamma_float)
        if len(turns) != 2**s:
            raise UsageError(f"s={s} needs {2**s} gamma angles")
        alpha = alpha_coeffs_float([cmath.exp(2j * math.pi * t) for t in turns])
        ok = is_unitary_float(shift_matrix_D_float(alpha))
        payload = {
            "command": "check-unitary",
            "path": "float",
            "tolerance": 1e-12,
            "alpha": [[a.real, a.imag] for a in alpha],
            "unitary": ok,
        }
        rows = [{"k": k, "re": a.real, "im": a.imag} for k, a in enumerate(alpha)]
    else:
        g = _gamma_vectors(args, [s])[0]
        alpha = alpha_coeffs(g)
        ok = is_unitary(shift_matrix_D(alpha))
        payload = {
            "command": "check-unitary",
            "path": "exact",
            "alpha": [_scalar_report(a) for a in alpha],
            "unitary": ok,
        }
        rows = [{"k": k, "re": a.to_float()[0], "im": a.to_float()[1]} for k, a in enumerate(alpha)]
    _emit(args, payload, rows)
    return 0 if ok else 1


def cmd_decompose(args) -> int:
    if not args.input:
        raise UsageError("--input is required")
    f = MBF.from_json(_read_json(args.input))
    psi = _psi_from_args(args)
    d = decompose(f, args.j0, psi)
    ok = reconstruct(d, psi) == f
    payload = {"command": "decompose", "decomposition": d.to_json(), "round_trip": ok}
    rows = [{"level": "v", "j": d.j0, "a": _fr(a), "re": c.to_float()[0], "im": c.to_float()[1]} for a, c in sorted(d.v.items())]
    rows += [{"level": "w", "j": j, "a": _fr(a), "re": c.to_float()[0], "im": c.to_float()[1]} for (j, a), c in sorted(d.w.items())]
    _emit(args, payload, rows)
    return 0 if ok else 1


def cmd_reconstruct(args) -> int:
    if not args.input:
        raise UsageError("--input is required")
    data = _read_json(args.input)
    d = Decomposition.from_json(data.get("decomposition", data))
    f = reconstruct(d, _psi_from_args(args))
    _emit(args, {"command": "reconstruct", "mbf": f.to_json()})
    return 0


def cmd_apply_op(args) -> int:
    if not args.input:
        raise UsageError("--input is required")
    f = MBF.from_json(_read_json(args.input))
    sym = parse_symbol(args.symbol, f.prime, f.dim)
    try:
        g = apply(sym, f)
    except NotLizorkinError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"command": "apply-op", "symbol": args.symbol, "result": g.to_json()})
    return 0


def cmd_check_eigen(args) -> int:
    n = args.n
    e = tuple(_int_list(args.e)) if args.e else tuple(range(1, n + 1))
    s_vec = [int(x) for x in args.s.split(",")] if args.s else [0] * n
    if len(s_vec) == 1 and n > 1:
        s_vec = s_vec * n
    a = tuple(_frac_list(args.a)) if args.a else (Fraction(0),) * n
    j = _int_list(args.j)[0] if args.j is not None else 0
    idx = WaveletIndex(n=n, e=e, j=j, a=a, s=tuple(s_vec), gammas=tuple(_gamma_vectors(args, s_vec)))
    sym = parse_symbol(args.symbol, 2, n)
    r = eigen_report(sym, idx)
    eig = r["eigenvalue"] or r["direct_eigenvalue"]
    payload = {
        "command": "check-eigen",
        "symbol": args.symbol,
        "index": idx.to_json(),
        "criterion": r["criterion"],
        "direct": r["direct"],
        "consistent": r["consistent"],
        "eigenvalue": _scalar_report(eig) if eig is not None else None,
    }
    rows = [{"criterion": r["criterion"], "direct": r["direct"], "re": eig.to_float()[0] if eig else "", "im": eig.to_float()[1] if eig else ""}]
    _emit(args, payload, rows)
    expected = args.expect != "fail"
    return 0 if r["consistent"] and (r["direct"] == expected) else 1


def cmd_enumerate_real(args) -> int:
    s = int(args.s or 1)
    den = args.den
    entries, rows = [], []
    all_ok = True
    families = ["s1"] if s == 1 else sorted(REAL_PRESETS)
    for fam in families:
        for m in range(den):
            t = Fraction(m, den)
            thetas = [t] if s == 1 else list(REAL_PRESETS[fam](t))
            alpha = real_alpha(s, thetas)
            real = all(c == c.conj() for c in alpha)
            unitary = is_unitary(shift_matrix_D(alpha))
            all_ok &= real and unitary
            entries.append(
                {
                    "family": fam,
                    "theta_turns": [_fr(x) for x in thetas],
                    "gammas": real_gammas(s, thetas).to_json(),
                    "alpha": [_scalar_report(c) for c in alpha],
                    "real": real,
                    "unitary": unitary,
                }
            )
            row = {"family": fam, "theta_turns": " ".join(_fr(x) for x in thetas)}
            row.update({f"alpha{k}": c.to_float()[0] for k, c in enumerate(alpha)})
            rows.append(row)
    _emit(args, {"command": "enumerate-real", "s": s, "families": entries}, rows)
    return 0 if all_ok else 1


COMMANDS = {
    "gen-basis": cmd_gen_basis,
    "check-orthonormal": cmd_check_orthonormal,
    "check-refinement": cmd_check_refinement,
    "check-unitary": cmd_check_unitary,
    "decompose": cmd_decompose,
    "reconstruct": cmd_reconstruct,
    "apply-op": cmd_apply_op,
    "check-eigen": cmd_check_eigen,
    "enumerate-real": cmd_enumerate_real,
}

DEFAULTS = {
    "p": 2,
    "n": 1,
    "j_range": "0",
    "gamma_max": 1,
    "s": None,
    "gamma_angles": None,
    "gamma_float": None,
    "scale": None,
    "input": None,
    "output": None,
    "format": "json",
    "j0": -3,
    "symbol": "fractional:alpha=1",
    "e": None,
    "j": None,
    "a": None,
    "expect": "pass",
    "den": 8,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpw", description="Exact p-adic wavelet toolkit")
    common = argparse.ArgumentParser(add_help=False, argument_default=None)
    common.add_argument("--config", help="TOML file of defaults; command-line flags take precedence")
    common.add_argument("--format", choices=["json", "csv"])
    common.add_argument("--output", "-o", help="output path (default stdout)")
    common.add_argument("--p", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--s", help="comma list of s per coordinate (0 = Haar psi0)")
    common.add_argument("--gamma-angles", help="gamma_r angles in turns, e.g. '-1/8,1/8'; ';' separates coordinates")

    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, argument_default=None)

    for name in ("gen-basis", "check-orthonormal"):
        sp = add(name, "emit the wavelet basis" if name == "gen-basis" else "Gram matrix equals identity")
        sp.add_argument("--j-range", help="'-1,0,1' or '-1..1'")
        sp.add_argument("--gamma-max", type=int)
        if name == "check-orthonormal":
            sp.add_argument("--scale", help="multiply the first basis function by this rational (negative test)")
    add("check-refinement", "phi equals the sum of its p refined copies")
    sp = add("check-unitary", "unitarity of the shift matrix D")
    sp.add_argument("--gamma-float", help="gamma angles in turns as floats (approximate path)")
    for name in ("decompose", "reconstruct", "apply-op"):
        sp = add(name, {"decompose": "MBF JSON -> decomposition", "reconstruct": "decomposition -> MBF", "apply-op": "apply a Fourier multiplier"}[name])
        sp.add_argument("--input", "-i")
        if name == "decompose":
            sp.add_argument("--j0", type=int)
        if name == "apply-op":
            sp.add_argument("--symbol")
    sp = add("check-eigen", "eigenfunction criterion and direct check")
    sp.add_argument("--symbol")
    sp.add_argument("--e", help="comma list, subset of 1..n")
    sp.add_argument("--j")
    sp.add_argument("--a", help="comma list of shifts in I_2")
    sp.add_argument("--expect", choices=["pass", "fail"])
    sp = add("enumerate-real", "real wavelet families for s=1,2")
    sp.add_argument("--den", type=int, help="angles theta = 2 pi m/den, m < den")
    return parser


def _merge_config(args) -> None:
    conf = {}
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                conf = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        section = conf.get(args.command)
        if isinstance(section, dict):
            conf = {**{k: v for k, v in conf.items() if not isinstance(v, dict)}, **section}
    conf = {k.replace("-", "_"): v for k, v in conf.items()}
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is None:
            value = conf.get(key, default)
            if isinstance(value, list):
                value = ",".join(str(x) for x in value)
            setattr(args, key, value)
    for key in ("p", "n", "gamma_max", "j0", "den"):
        setattr(args, key, int(getattr(args, key)))


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _merge_config(args)
        if args.p < 2 or any(args.p % d == 0 for d in range(2, int(args.p**0.5) + 1)):
            raise UsageError("--p must be prime")
        if args.n < 1:
            raise UsageError("--n must be positive")
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"qpw {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
