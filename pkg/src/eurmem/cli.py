"""Command-line surface: bound reports, figure-data sweeps, discord and
application reports, and state validation.

Commands
--------
bounds    all uncertainty bounds for one (state, X, Z) triple
sweep     CSV of bounds along a one-parameter family (presets fig1a,
          fig1b, fig2 regenerate the reference figure data)
discord   classical correlation / discord via the Bloch-sphere optimizer
apps      entanglement witness, E_f lower bound, common-randomness upper bound
validate  density-matrix invariant report for a state file

States are JSON documents (see states.from_spec), observables are bare
Pauli names, inline JSON specs, or @file references.  All output is
deterministic: identical inputs give byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .apps import applications_report
from .bounds import bounds_report, family_pair_observables
from .infoquant import OptimizerConfig, classical_correlation
from .measure import observable_from_spec
from .states import (
    StateValidationError,
    bell_diagonal_special,
    from_spec,
    parse_explicit,
    to_spec,
    validate,
    werner,
    x_state_special,
)

SWEEP_HEADER = "p,q_mu,s_cond,i_ab,i_xb,i_zb,delta,bound_berta,bound_pati,bound_ours,actual"

_SWEEP_FAMILIES = {
    "werner": werner,
    "bell_diagonal_special": bell_diagonal_special,
    "xstate": x_state_special,
}

PRESETS = {
    "fig1a": {"family": "bell_diagonal_special", "pair": "xy"},
    "fig1b": {"family": "bell_diagonal_special", "pair": "xz"},
    "fig2": {"family": "xstate", "pair": "xz"},
}

_PAULI_SHORTHAND = {
    "x": "sigma_x",
    "y": "sigma_y",
    "z": "sigma_z",
    "sigma_x": "sigma_x",
    "sigma_y": "sigma_y",
    "sigma_z": "sigma_z",
}


def _fmt(value: float) -> str:
    """Shortest decimal capped at 12 significant digits (-0.0 normalized)."""
    return format(float(value) + 0.0, ".12g")


def _read_json_text(text: str):
    return json.loads(text)


def _load_state_arg(arg: str):
    """State from a file path or inline JSON; returns (state, echo-fields)."""
    if arg.strip().startswith("{"):
        doc = _read_json_text(arg)
    else:
        doc = _read_json_text(Path(arg).read_text(encoding="utf-8"))
    rho = from_spec(doc)
    echo: dict = {}
    if isinstance(doc, dict) and "family" in doc:
        family = doc["family"]
        echo["family"] = family.get("name")
        if "p" in family:
            echo["p"] = family["p"]
    return rho, echo


def _load_observable_arg(arg: str):
    text = arg.strip()
    if text in _PAULI_SHORTHAND:
        return observable_from_spec({"named": _PAULI_SHORTHAND[text]})
    if text.startswith("{"):
        return observable_from_spec(_read_json_text(text))
    if text.startswith("@"):
        return observable_from_spec(_read_json_text(Path(text[1:]).read_text(encoding="utf-8")))
    raise ValueError(
        f"cannot parse observable {arg!r}: expected sigma_x|sigma_y|sigma_z, "
        "inline JSON, or @file"
    )


def _optimizer_config(args) -> OptimizerConfig:
    return OptimizerConfig(grid_theta=args.grid_theta, grid_phi=args.grid_phi)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _plain(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return _fmt(value)
    if isinstance(value, (list, tuple)):
        return "/".join(_plain(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value)
    return str(value)


def _render_flat(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    if fmt == "table":
        width = max(len(k) for k in record)
        lines = [f"{k:<{width}}  {_plain(v)}" for k, v in record.items()]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        keys = list(record)
        return ",".join(keys) + "\n" + ",".join(_plain(v) for v in record.values()) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def cmd_bounds(args) -> int:
    rho, echo = _load_state_arg(args.state)
    x = _load_observable_arg(args.x)
    z = _load_observable_arg(args.z)
    corr = classical_correlation(rho, _optimizer_config(args)) if args.with_discord else None
    report = bounds_report(rho, x, z, corr)
    record = report.to_dict()
    record.update(echo)
    record["observables"] = [x.label(), z.label()]
    if args.echo_state:
        record["state"] = to_spec(rho)
    _emit(_render_flat(record, args.format), args.out)
    return 0


def _sweep_grid(p_start: float, p_end: float, p_step: float) -> list[float]:
    if not (0.0 <= p_start <= p_end <= 1.0):
        raise ValueError("sweep requires 0 <= p_start <= p_end <= 1")
    if not p_step > 0.0:
        raise ValueError("sweep requires p_step > 0")
    count = int((p_end - p_start) / p_step + 1e-9)
    ps = [p_start + k * p_step for k in range(count + 1)]
    if ps[-1] > p_end:
        ps[-1] = p_end
    elif p_end - ps[-1] > 1e-12:
        ps.append(p_end)
    return ps


def _sweep_rows(family: str, ps, observables_for, cfg: OptimizerConfig) -> str:
    builder = _SWEEP_FAMILIES.get(family)
    if builder is None:
        raise ValueError(
            f"sweep family must be one of {sorted(_SWEEP_FAMILIES)}, got {family!r}"
        )
    lines = [SWEEP_HEADER]
    for p in ps:
        rho = builder(p)
        x, z = observables_for(p)
        corr = classical_correlation(rho, cfg)
        rep = bounds_report(rho, x, z, corr)
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    p,
                    rep.q_mu,
                    rep.s_cond,
                    rep.i_ab,
                    rep.i_xb,
                    rep.i_zb,
                    rep.delta,
                    rep.bound_berta,
                    rep.bound_pati,
                    rep.bound_ours,
                    rep.actual,
                )
            )
        )
    return "\n".join(lines) + "\n"


def _indexed_path(path: Path, index: int, total: int) -> Path:
    if total == 1:
        return path
    return path.with_name(f"{path.stem}_pair{index + 1}{path.suffix}")


def cmd_sweep(args) -> int:
    cfg = _optimizer_config(args)

    if args.preset:
        preset = PRESETS[args.preset]
        family = preset["family"]
        pair = preset["pair"]
        ps = _sweep_grid(0.0, 1.0, 0.01)
        out = Path(args.out) if args.out else Path(f"{args.preset}.csv")
        text = _sweep_rows(
            family, ps, lambda p: family_pair_observables(family, p, pair), cfg
        )
        out.write_text(text, encoding="utf-8", newline="")
        return 0

    if args.spec:
        doc = _read_json_text(Path(args.spec).read_text(encoding="utf-8"))
        family = doc["family"]
        ps = _sweep_grid(doc["p_start"], doc["p_end"], doc["p_step"])
        pairs = doc.get("pairs")
        if not pairs:
            raise ValueError("sweep spec needs a nonempty 'pairs' list of [X, Z] entries")
        out_base = Path(args.out or doc.get("out") or f"{family}_sweep.csv")
        texts = []
        for raw_x, raw_z in pairs:
            x = _load_observable_arg(raw_x if isinstance(raw_x, str) else json.dumps(raw_x))
            z = _load_observable_arg(raw_z if isinstance(raw_z, str) else json.dumps(raw_z))
            texts.append(_sweep_rows(family, ps, lambda p: (x, z), cfg))
        for i, text in enumerate(texts):
            _indexed_path(out_base, i, len(texts)).write_text(
                text, encoding="utf-8", newline=""
            )
        return 0

    if not (args.family and args.x and args.z):
        raise ValueError("sweep needs --preset, --spec, or --family with --x and --z")
    x = _load_observable_arg(args.x)
    z = _load_observable_arg(args.z)
    ps = _sweep_grid(args.p_start, args.p_end, args.p_step)
    out = Path(args.out) if args.out else Path(f"{args.family}_sweep.csv")
    text = _sweep_rows(args.family, ps, lambda p: (x, z), cfg)
    out.write_text(text, encoding="utf-8", newline="")
    return 0


def cmd_discord(args) -> int:
    rho, echo = _load_state_arg(args.state)
    report = classical_correlation(rho, _optimizer_config(args))
    record = report.to_dict()
    record.update(echo)
    _emit(_render_flat(record, args.format), args.out)
    return 0


def cmd_apps(args) -> int:
    rho, echo = _load_state_arg(args.state)
    x = _load_observable_arg(args.x)
    z = _load_observable_arg(args.z)
    record = applications_report(rho, x, z)
    record.update(echo)
    record["observables"] = [x.label(), z.label()]
    _emit(_render_flat(record, args.format), args.out)
    return 0


def cmd_validate(args) -> int:
    text = (
        args.state
        if args.state.strip().startswith("{")
        else Path(args.state).read_text(encoding="utf-8")
    )
    doc = _read_json_text(text)
    if isinstance(doc, dict) and "explicit" in doc:
        mat, dA, dB = parse_explicit(doc["explicit"])
        report = validate(mat, dA, dB)
    else:
        rho = from_spec(doc)  # family docs validate during construction
        report = validate(rho.mat, rho.dA, rho.dB)
    _emit(_render_flat_report(report, args.format), args.out)
    return 0 if report.passed else 1


def _render_flat_report(report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    lines = [f"passed: {report.passed}"]
    for c in report.checks:
        lines.append(
            f"{c.name:<10} {'pass' if c.passed else 'FAIL'}  "
            f"residual={_fmt(c.residual)}  tolerance={_fmt(c.tolerance)}"
        )
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eurmem",
        description="Entropic uncertainty lower bounds in the presence of quantum memory.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, state=True, observables=False, optimizer=False):
        if state:
            p.add_argument("--state", required=True, help="state JSON file (or inline JSON)")
        if observables:
            p.add_argument("--x", required=True, help="first observable spec")
            p.add_argument("--z", required=True, help="second observable spec")
        p.add_argument("--format", choices=("json", "table", "csv"), default="json")
        p.add_argument("--out", help="write output to this path instead of stdout")
        if optimizer:
            p.add_argument("--grid-theta", type=int, default=60)
            p.add_argument("--grid-phi", type=int, default=120)

    p_bounds = sub.add_parser("bounds", help="bound report for one (state, X, Z) triple")
    add_common(p_bounds, observables=True, optimizer=True)
    p_bounds.add_argument(
        "--with-discord",
        action="store_true",
        help="run the correlation optimizer and fill bound_pati",
    )
    p_bounds.add_argument(
        "--echo-state",
        action="store_true",
        help="include the state in re-ingestible explicit form",
    )
    p_bounds.set_defaults(func=cmd_bounds)

    p_sweep = sub.add_parser("sweep", help="CSV sweep over a one-parameter family")
    p_sweep.add_argument("--preset", choices=sorted(PRESETS))
    p_sweep.add_argument("--spec", help="sweep specification JSON file")
    p_sweep.add_argument("--family", choices=sorted(_SWEEP_FAMILIES))
    p_sweep.add_argument("--p-start", type=float, default=0.0)
    p_sweep.add_argument("--p-end", type=float, default=1.0)
    p_sweep.add_argument("--p-step", type=float, default=0.01)
    p_sweep.add_argument("--x", help="first observable spec (custom sweeps)")
    p_sweep.add_argument("--z", help="second observable spec (custom sweeps)")
    p_sweep.add_argument("--out", help="output CSV path")
    p_sweep.add_argument("--grid-theta", type=int, default=60)
    p_sweep.add_argument("--grid-phi", type=int, default=120)
    p_sweep.set_defaults(func=cmd_sweep)

    p_discord = sub.add_parser("discord", help="classical correlation and discord")
    add_common(p_discord, optimizer=True)
    p_discord.set_defaults(func=cmd_discord)

    p_apps = sub.add_parser("apps", help="witness and application bounds")
    add_common(p_apps, observables=True)
    p_apps.set_defaults(func=cmd_apps)

    p_validate = sub.add_parser("validate", help="density-matrix invariant report")
    add_common(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StateValidationError as exc:
        print(f"error: invariant '{exc.invariant}' violated: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
