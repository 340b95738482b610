"""Command line front end.

Subcommands: ``bounds``, ``check``, ``boundary``, ``simulate``, ``figure``.

Exit codes: 0 success (``check``: all relations satisfied), 1 usage error,
2 unphysical input, 3 I/O error, 4 a relation is violated.

A YAML file given with ``--config`` may set ``ab``, ``a``, ``b``, ``r``,
``points``, ``family``, ``simulate``, ``seed`` and ``out``, either at top
level or grouped in ``pair``/``figure``/``simulate`` sections; flags win over
file values. ``TQU_SEED`` is the seed fallback when neither sets one.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
import yaml

from tqu import figures
from tqu.boundary import FAMILY_BUILDERS, FamilyName
from tqu.errors import ConfigError, DomainError, InvalidObservable, UnphysicalState
from tqu.qmath import BlochVector, PauliAxis, PreparationSetting, state_from_setting
from tqu.relations import (
    ObservablePair,
    check_all,
    maassen_uffink_bound,
    robertson_bound,
    schroedinger_bound,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNPHYSICAL = 2
EXIT_IO = 3
EXIT_VIOLATED = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _vector(text: str) -> List[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated vector: {text!r}")
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected 3 components, got {len(values)}")
    return values


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in str(text).split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated list of numbers: {text!r}")


def _add_pair_args(p):
    p.add_argument("--ab", type=float, help="a.b for a=z and b in the y-z plane")
    p.add_argument("--a", type=_vector, metavar="X,Y,Z", help="axis of A")
    p.add_argument("--b", type=_vector, metavar="X,Y,Z", help="axis of B")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, metavar="FILE", help="YAML configuration file")

    parser = _Parser(prog="tqu", description="Tight uncertainty relations for qubit Pauli observables.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", parents=[common], help="state-independent and r-dependent bounds")
    _add_pair_args(p)
    p.add_argument("--r", type=float, help="degree of polarization for the mid bounds")

    p = sub.add_parser("check", parents=[common], help="evaluate all relations for one state")
    _add_pair_args(p)
    p.add_argument("--state", type=_vector, metavar="X,Y,Z", help="Bloch vector")
    p.add_argument("--r", type=float, help="polarization (with --theta/--phi)")
    p.add_argument("--theta", type=float, help="polar preparation angle, radians")
    p.add_argument("--phi", type=float, help="azimuthal preparation angle, radians")

    families = [f.value for f in FamilyName]
    for name, helptext in (
        ("boundary", "theoretical points of a boundary family as CSV"),
        ("simulate", "simulated polarimeter estimates along a family as CSV"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        _add_pair_args(p)
        p.add_argument("--family", choices=families)
        p.add_argument("--r", type=float)
        p.add_argument("--points", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--random", action="store_true", help="draw the family parameter at random")
        p.add_argument("--out", type=Path, metavar="FILE", help="output CSV (default stdout)")
        if name == "simulate":
            p.add_argument("--simulate", "--n0", dest="simulate", type=float, metavar="N0",
                           help="expected counts per projector at unit intensity")

    p = sub.add_parser("figure", parents=[common], help="write figure datasets")
    p.add_argument("figure_ids", nargs="*", metavar="FIG",
                   help=f"figure ids ({', '.join(figures.FIGURE_IDS)}), bare numbers or 'all'")
    p.add_argument("--r", type=_float_list, metavar="R[,R...]", help="override the polarization list")
    p.add_argument("--points", type=int)
    p.add_argument("--simulate", type=float, metavar="N0", help="add simulated estimates")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", type=Path, metavar="DIR")
    return parser


# --------------------------------------------------------------------------
# configuration


def load_config(path: Optional[Path]) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh) or {}
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise UsageError(f"malformed config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must be a mapping")
    flat = {}
    for key, value in data.items():
        if isinstance(value, dict) and key in ("pair", "figure", "simulate", "boundary", "check"):
            flat.update(value)
        else:
            flat[key] = value
    # `simulate: {n0: ...}` section spelling
    if "n0" in flat:
        flat.setdefault("simulate", flat.pop("n0"))
    if isinstance(flat.get("simulate"), dict):
        flat.pop("simulate")
    return flat


def _merged(args, cfg, key, default=None):
    value = getattr(args, key, None)
    if value is not None and value is not False:
        return value
    return cfg.get(key, default)


def resolve_seed(args, cfg) -> int:
    seed = _merged(args, cfg, "seed")
    if seed is None:
        seed = os.environ.get("TQU_SEED", 0)
    try:
        return int(seed)
    except (TypeError, ValueError):
        raise UsageError(f"seed must be an integer, got {seed!r}")


def resolve_pair(args, cfg) -> ObservablePair:
    ab = _merged(args, cfg, "ab")
    a = _merged(args, cfg, "a")
    b = _merged(args, cfg, "b")
    if ab is not None:
        if a is not None or b is not None:
            raise UsageError("give either --ab or --a/--b")
        ab = float(ab)
        if not -1.0 <= ab <= 1.0:
            raise UsageError(f"--ab must lie in [-1, 1], got {ab}")
        return ObservablePair.from_dot(ab)
    if a is None and b is None:
        return ObservablePair.from_dot(0.0)
    if a is None or b is None:
        raise UsageError("--a and --b must be given together")
    return ObservablePair(PauliAxis(a), PauliAxis(b))


# --------------------------------------------------------------------------
# commands


def cmd_bounds(args, cfg, out) -> int:
    pair = resolve_pair(args, cfg)
    r = _merged(args, cfg, "r")
    print(f"a.b = {figures.fmt(pair.dot_ab)}", file=out)
    print(f"b_EV = {figures.fmt(pair.ev_bound())}", file=out)
    print(f"b_SD = {figures.fmt(pair.sd_bound())}", file=out)
    print(f"b_H = {figures.fmt(pair.entropy_bound())}", file=out)
    if r is not None:
        r = float(r)
        if not 0.0 <= r <= 1.0:
            raise UnphysicalState(f"r = {r} outside [0, 1]")
        print(f"b_EV(r={figures.fmt(r)}) = {figures.fmt(pair.ev_bound(r))}", file=out)
        print(f"b_SD(r={figures.fmt(r)}) = {figures.fmt(pair.sd_bound(r))}", file=out)
        print(f"b_H(r={figures.fmt(r)}) = {figures.fmt(pair.entropy_bound(r))}", file=out)
    print(f"maassen_uffink = {figures.fmt(maassen_uffink_bound(pair))}", file=out)
    return EXIT_OK


def _state_from_args(args, cfg) -> BlochVector:
    state = _merged(args, cfg, "state")
    if state is not None:
        return BlochVector(state)
    r, theta, phi = (_merged(args, cfg, k) for k in ("r", "theta", "phi"))
    if None in (r, theta, phi):
        raise UsageError("give --state X,Y,Z or all of --r, --theta, --phi")
    try:
        return state_from_setting(PreparationSetting(float(r), float(theta), float(phi)))
    except DomainError as exc:
        raise UnphysicalState(str(exc)) from exc


_LABELS = {"ev": "expectation", "sd": "std-deviation", "entropy": "entropy"}


def cmd_check(args, cfg, out) -> int:
    pair = resolve_pair(args, cfg)
    state = _state_from_args(args, cfg)
    reports = check_all(state, pair)
    x, y, z = state.n
    print(f"state = ({figures.fmt(x)}, {figures.fmt(y)}, {figures.fmt(z)})  r = {figures.fmt(state.r)}", file=out)
    print(f"a.b = {figures.fmt(pair.dot_ab)}", file=out)
    for form, rep in reports.items():
        print(
            f"{_LABELS[form]:>13}: lhs={figures.fmt(rep.lhs)} mid={figures.fmt(rep.mid_bound)} "
            f"outer={figures.fmt(rep.outer_bound)} slack={figures.fmt(rep.slack)} "
            f"satisfied={rep.satisfied} saturates_mid={rep.saturates_mid} "
            f"saturates_outer={rep.saturates_outer}",
            file=out,
        )
    print(f"robertson = {figures.fmt(robertson_bound(state, pair))}", file=out)
    print(f"schroedinger = {figures.fmt(schroedinger_bound(state, pair))}", file=out)
    print(f"maassen_uffink = {figures.fmt(maassen_uffink_bound(pair))}", file=out)
    return EXIT_OK if all(rep.satisfied for rep in reports.values()) else EXIT_VIOLATED


def _family_from_args(args, cfg):
    pair = resolve_pair(args, cfg)
    name = FamilyName(_merged(args, cfg, "family", FamilyName.GREAT_CIRCLE.value))
    r = _merged(args, cfg, "r", 1.0)
    if isinstance(r, (list, tuple)):
        if len(r) != 1:
            raise UsageError("boundary/simulate take a single r")
        r = r[0]
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise UnphysicalState(f"r = {r} outside [0, 1]")
    points = int(_merged(args, cfg, "points", figures.DEFAULT_POINTS))
    seed = resolve_seed(args, cfg)
    rng = np.random.default_rng(seed) if _merged(args, cfg, "random", False) else None
    family = FAMILY_BUILDERS[name](pair, r, points, rng=rng)
    return family, seed


def _emit(text: str, path: Optional[Path], out) -> None:
    if path is None:
        out.write(text)
        return
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_boundary(args, cfg, out) -> int:
    family, _ = _family_from_args(args, cfg)
    _emit(figures.family_csv(family), _merged(args, cfg, "out"), out)
    return EXIT_OK


def cmd_simulate(args, cfg, out) -> int:
    family, seed = _family_from_args(args, cfg)
    n0 = _merged(args, cfg, "simulate")
    if n0 is None:
        raise UsageError("simulate needs --simulate N0")
    estimates = figures.simulate_family(family, float(n0), seed)
    _emit(figures.family_csv(family, estimates), _merged(args, cfg, "out"), out)
    return EXIT_OK


def cmd_figure(args, cfg, out) -> int:
    ids = args.figure_ids or cfg.get("figures") or ["all"]
    if isinstance(ids, str):
        ids = [ids]
    try:
        ids = figures.parse_figure_ids(str(i) for i in ids)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    r_list = _merged(args, cfg, "r")
    if r_list is not None and not isinstance(r_list, (list, tuple)):
        r_list = [r_list]
    if r_list is not None:
        r_list = [float(r) for r in r_list]
        if any(not 0.0 <= r <= 1.0 for r in r_list):
            raise UnphysicalState(f"r values must lie in [0, 1], got {r_list}")
    points = int(_merged(args, cfg, "points", figures.DEFAULT_POINTS))
    n0 = _merged(args, cfg, "simulate")
    seed = resolve_seed(args, cfg)
    out_dir = Path(_merged(args, cfg, "out", "figures"))
    for figure_id in ids:
        spec = figures.FigureSpec.for_figure(figure_id, r_list, points)
        for path in figures.write_figure(spec, out_dir, None if n0 is None else float(n0), seed):
            print(path, file=out)
    return EXIT_OK


COMMANDS = {
    "bounds": cmd_bounds,
    "check": cmd_check,
    "boundary": cmd_boundary,
    "simulate": cmd_simulate,
    "figure": cmd_figure,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return COMMANDS[args.command](args, cfg, out)
    except UnphysicalState as exc:
        print(f"tqu: unphysical input: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL
    except OSError as exc:
        print(f"tqu: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, InvalidObservable, ConfigError, DomainError, ValueError) as exc:
        print(f"tqu: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
