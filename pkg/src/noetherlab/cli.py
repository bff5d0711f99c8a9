"""Command-line driver: verification campaigns with JSON reports.

    noetherlab verify-jordan --algebra hermC:3 --trials 500 --seed 42
    noetherlab noether --algebra hermC:2
    noetherlab noether --classical
    noetherlab reconstruct --algebra hermC:2 --correspondence canonical
    noetherlab thermal --beta-min 0 --beta-max 2 --beta-points 5

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
configuration error.  Reports go to stdout as JSON unless --out is given.
Flags override values from an optional TOML --config file.  The worker
count is taken from the NOETHERLAB_WORKERS environment variable.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

try:
    import tomllib
except ImportError:
    import tomli as tomllib

from . import campaigns
from .campaigns import CampaignConfig, UsageError
from .jordan import JordanElement


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noetherlab",
        description="randomized verification campaigns for Jordan-algebraic "
                    "mechanics; reports are deterministic JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None, help="campaign seed")
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--algebra", type=str, default=None,
                       help="selector like hermC:3, spin:5 or albert")
        p.add_argument("--config", type=str, default=None,
                       help="TOML file with defaults; flags override it")
        p.add_argument("--out", type=str, default=None,
                       help="write the JSON report here instead of stdout")

    common(sub.add_parser("verify-jordan",
                          help="algebraic and spectral invariant suite"))

    p = sub.add_parser("noether", help="Noether equivalence sweep")
    common(p)
    p.add_argument("--classical", action="store_true",
                   help="run the classical polynomial presets instead")
    p.add_argument("--commuting-trials", type=int, default=None)
    p.add_argument("--t-samples", type=float, nargs="+", default=None)
    p.add_argument("--steps", type=int, default=None,
                   help="integration steps for classical flows")

    p = sub.add_parser("reconstruct",
                       help="dynamical correspondence and C*-axiom checks")
    common(p)
    p.add_argument("--correspondence", choices=("canonical", "zero"),
                   default=None)

    p = sub.add_parser("thermal", help="Gibbs / partition / translation suite")
    common(p)
    p.add_argument("--beta-min", type=float, default=None)
    p.add_argument("--beta-max", type=float, default=None)
    p.add_argument("--beta-points", type=int, default=None)
    p.add_argument("--hamiltonian", type=str, default=None,
                   help="JSON file holding a serialized element")
    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise UsageError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"malformed config file {path}: {exc}")


def _load_hamiltonian(path: str) -> JordanElement:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return JordanElement.from_dict(data)
    except FileNotFoundError:
        raise UsageError(f"hamiltonian file not found: {path}")
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed hamiltonian file {path}: {exc}")


def _merged(args: argparse.Namespace, key: str, file_cfg: dict, default):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in file_cfg:
        return file_cfg[key]
    return default


def _config_from_args(args: argparse.Namespace) -> CampaignConfig:
    file_cfg = _load_config_file(args.config) if args.config else {}
    seed = int(_merged(args, "seed", file_cfg, 42))
    trials = int(_merged(args, "trials", file_cfg, 100))
    tol = float(_merged(args, "tol", file_cfg, 1e-9))
    selector = _merged(args, "algebra", file_cfg, None)

    params = {}
    if args.command == "noether":
        classical = bool(getattr(args, "classical", False)
                         or file_cfg.get("classical", False))
        params["classical"] = classical
        if classical and selector is not None:
            raise UsageError("--classical conflicts with --algebra")
        ct = _merged(args, "commuting_trials", file_cfg, None)
        if ct is not None:
            params["commuting_trials"] = int(ct)
        ts = _merged(args, "t_samples", file_cfg, None)
        if ts is not None:
            params["t_samples"] = [float(t) for t in ts]
        steps = _merged(args, "steps", file_cfg, None)
        if steps is not None:
            params["steps"] = int(steps)
        if not classical and selector is None:
            selector = "hermC:2"
    elif args.command == "reconstruct":
        params["correspondence"] = _merged(args, "correspondence", file_cfg,
                                           "canonical")
        if selector is None:
            selector = "hermC:2"
    elif args.command == "thermal":
        for key in ("beta_min", "beta_max", "beta_points"):
            val = _merged(args, key, file_cfg, None)
            if val is not None:
                params[key] = val
        hpath = _merged(args, "hamiltonian", file_cfg, None)
        if hpath is not None:
            params["hamiltonian"] = _load_hamiltonian(hpath)
        if selector is None:
            selector = "hermC:2"
    else:  # verify-jordan
        if selector is None:
            raise UsageError("verify-jordan needs --algebra")

    algebra = campaigns.parse_algebra(selector) if selector else None
    if args.command == "thermal" and "hamiltonian" in params:
        if params["hamiltonian"].descriptor != algebra:
            raise UsageError("hamiltonian algebra does not match --algebra")
    return CampaignConfig(command=args.command, seed=seed, trials=trials,
                          tol=tol, algebra=algebra, params=params)


def _dump_report(report: dict, out: Optional[str]):
    # hamiltonian objects in the config echo are already dicts in the
    # report body; the config echo keeps only serializable params
    cfg_params = report["config"]["params"]
    if "hamiltonian" in cfg_params and isinstance(cfg_params["hamiltonian"],
                                                  JordanElement):
        cfg_params["hamiltonian"] = cfg_params["hamiltonian"].to_dict()
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    try:
        config = _config_from_args(args)
        report = campaigns.run(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _dump_report(report, args.out)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
