"""Command-line front end: figure data, spectra, Im Gamma reports and validation.

Every option can also come from a ``key = value`` config file (``#``
comments, keys are long flags with ``-`` replaced by ``_``).  The file is
given by ``--config`` or the ``MIRROR_RADIATION_CONFIG`` environment
variable; flags on the command line win over the file.

Exit codes: 0 success, 2 usage, 3 I/O, 4 validation failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .effective_action import im_gamma, ratio_curves
from .emission import POLARIZATIONS, dynamic_decay_angular, excitation_angular, full_spectrum
from .kernels import DEFAULT_COUPLING_E2, Channel, Orientation, PhysicalConfig
from .trajectory import MotionSpec, Sampled, read_trajectory
from .validation import run_checks

logger = logging.getLogger(__name__)

CONFIG_ENV = "MIRROR_RADIATION_CONFIG"
EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VALIDATION = 0, 2, 3, 4
FORMATS = ("csv", "json")


class UsageError(Exception):
    """Bad or missing parameters after merging config and flags."""


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


@dataclass(frozen=True)
class Option:
    flag: str
    type: Callable[[str], Any] = _float
    help: str = ""
    default: Any = None
    choices: tuple[str, ...] | None = None
    required: bool = False

    @property
    def key(self) -> str:
        return self.flag.lstrip("-").replace("-", "_")


_PHYSICS = (
    Option("--e2", help="squared charge e^2 (Heaviside-Lorentz)", default=DEFAULT_COUPLING_E2),
    Option("--m", help="atomic mass m", default=1.0),
    Option("--omega", help="atomic gap Omega", default=1.0),
    Option("--a", help="atom-mirror distance a; 'inf' for free space", default=math.inf),
)
_MOTION = (
    Option("--y0", help="oscillation amplitude"),
    Option("--omega-cm", help="center-of-mass frequency"),
    Option("--T", help="observation time"),
    Option("--traj", type=str, help="sampled trajectory file (replaces --y0/--omega-cm/--T)"),
)

COMMANDS: dict[str, tuple[str, tuple[Option, ...]]] = {
    "kernels": (
        "ratio curves m1 = 1 + m_par/m0 and m2 = 1 + m_perp/m0 against x = a(|nu| - Omega)",
        (
            Option("--channel", type=str, default="all", choices=("ee", "eb", "bb", "all")),
            Option("--x-min", required=True),
            Option("--x-max", required=True),
            Option("--points", type=_int, required=True),
        ),
    ),
    "angular": (
        "a^2-scaled angular profiles p1, p2 of the dynamical photon emission",
        (
            Option("--ka", required=True, help="photon wavenumber times a"),
            Option("--omega-a", required=True, help="atomic gap times a"),
            Option("--theta-points", type=_int, default=2001),
            Option("--process", type=str, default="decay", choices=("decay", "excitation")),
        ),
    ),
    "spectrum": (
        "emitted-photon spectrum for motion normal to the mirror",
        (
            Option("--mode", type=str, default="full", choices=("decay", "excitation", "full")),
            Option("--polarization", type=str, default="as-printed", choices=POLARIZATIONS),
            *_MOTION,
            *_PHYSICS,
        ),
    ),
    "imgamma": (
        "channel-resolved Im Gamma, decay rate and vacuum persistence",
        (
            Option("--orientation", type=str, required=True, choices=("par", "perp")),
            *_MOTION,
            *_PHYSICS,
        ),
    ),
    "validate": (
        "run every closed form against its quadrature oracle",
        (Option("--tol", help="override every numeric tolerance"),),
    ),
}


@dataclass
class RunConfig:
    """Merged view of config-file keys and command-line flags."""

    command: str
    values: dict[str, Any] = field(default_factory=dict)
    out: str | None = None
    format: str = "csv"

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    def physical(self) -> PhysicalConfig:
        return PhysicalConfig(
            coupling_e2=self["e2"], mass_m=self["m"], omega=self["omega"], distance_a=self["a"]
        )


def read_config(path: str | Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    entries = {}
    with Path(path).open() as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            entries[key.strip().replace("-", "_")] = value.strip()
    return entries


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="mirror-radiation",
        description=__doc__.split("\n\n")[0],
        epilog=(
            "Natural units; defaults e^2 = 4 pi/137, m = 1, Omega = 1, a = inf. "
            f"Config file: --config PATH or ${CONFIG_ENV}."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    subparsers = {}
    for name, (text, options) in COMMANDS.items():
        p = sub.add_parser(name, help=text, description=text)
        for opt in options:
            extra = " (required)" if opt.required else ""
            if opt.default is not None:
                extra = f" (default {opt.default})"
            p.add_argument(opt.flag, dest=opt.key, type=opt.type, choices=opt.choices, help=opt.help + extra)
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=FORMATS, help="output format (default csv)")
        p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
        subparsers[name] = p
    return parser, subparsers


def _merge(command: str, ns: argparse.Namespace) -> RunConfig:
    options = COMMANDS[command][1]
    known_everywhere = {o.key for _, opts in COMMANDS.values() for o in opts} | {"out", "format"}
    path = ns.config or os.environ.get(CONFIG_ENV)
    from_file = read_config(path) if path else {}
    for key in from_file:
        if key not in known_everywhere:
            raise UsageError(f"unknown config key {key!r}")
    values = {}
    for opt in options:
        value = getattr(ns, opt.key)
        if value is None and opt.key in from_file:
            text = from_file[opt.key]
            try:
                value = opt.type(text)
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"config key {opt.key}: {exc}") from None
            if opt.choices and value not in opt.choices:
                raise UsageError(f"config key {opt.key}: {value!r} not in {opt.choices}")
        if value is None:
            value = opt.default
        if value is None and opt.required:
            raise UsageError(f"the following arguments are required: {opt.flag}")
        values[opt.key] = value
    fmt = ns.format or from_file.get("format", "csv")
    if fmt not in FORMATS:
        raise UsageError(f"format must be one of {FORMATS}")
    return RunConfig(command, values, ns.out or from_file.get("out"), fmt)


# --- serialization -------------------------------------------------------

def _fmt(value: float) -> str:
    return f"{float(value):.11e}"


def render(rows: list[dict[str, float]], columns: Sequence[str], fmt: str, preamble: Sequence[str] = ()) -> str:
    """CSV with header (``#`` preamble lines allowed) or a JSON array of row objects."""
    if fmt == "json":
        payload = [{c: float(_fmt(r[c])) for c in columns if c in r} for r in rows]
        return json.dumps(payload, indent=1) + "\n"
    lines = [f"# {p}" for p in preamble]
    lines.append(",".join(columns))
    lines.extend(",".join(_fmt(r[c]) for c in columns) for r in rows)
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", newline="\n") as fh:
        fh.write(text)


# --- commands ------------------------------------------------------------

def _motion(run: RunConfig, orientation: Orientation) -> MotionSpec:
    if run["traj"] is not None:
        times, y = read_trajectory(run["traj"])
        return MotionSpec(orientation, Sampled(times, y))
    missing = [f"--{k.replace('_', '-')}" for k in ("y0", "omega_cm", "T") if run[k] is None]
    if missing:
        raise UsageError(f"the following arguments are required without --traj: {', '.join(missing)}")
    return MotionSpec.monochromatic(orientation, run["y0"], run["omega_cm"], run["T"])


def cmd_kernels(run: RunConfig) -> int:
    x_min, x_max, n = run["x_min"], run["x_max"], run["points"]
    if not (0 < x_min < x_max) or n < 2:
        raise UsageError("need 0 < --x-min < --x-max and --points >= 2")
    x = np.linspace(x_min, x_max, n)
    channels = list(Channel) if run["channel"] == "all" else [Channel(run["channel"])]
    columns = ["x"]
    data = {"x": x}
    for channel in channels:
        m1, m2 = ratio_curves(channel, x)
        names = ("m1", "m2") if len(channels) == 1 else (f"{channel.value}_m1", f"{channel.value}_m2")
        data.update(zip(names, (m1, m2)))
        columns.extend(names)
    rows = [{c: data[c][i] for c in columns} for i in range(n)]
    _emit(render(rows, columns, run.format), run.out)
    return EXIT_OK


def cmd_angular(run: RunConfig) -> int:
    ka, omega_a, n = run["ka"], run["omega_a"], run["theta_points"]
    if ka < 0 or omega_a <= 0 or n < 2:
        raise UsageError("need --ka >= 0, --omega-a > 0 and --theta-points >= 2")
    cfg = PhysicalConfig(omega=omega_a, distance_a=1.0)
    fn = dynamic_decay_angular if run["process"] == "decay" else excitation_angular
    dist = fn(ka, cfg, n)
    columns = ["theta", "p1", "p2", "total"]
    rows = [
        dict(zip(columns, vals)) for vals in zip(dist.theta, dist.p1, dist.p2, dist.total)
    ]
    _emit(render(rows, columns, run.format), run.out)
    return EXIT_OK


def cmd_spectrum(run: RunConfig) -> int:
    cfg = run.physical()
    motion = _motion(run, Orientation.PERPENDICULAR)
    table = full_spectrum(cfg, motion, run["mode"], run["polarization"])
    columns = ["k", *table.channels]
    rows = table.rows()
    preamble = []
    if table.kind == "density":
        preamble.append("dP/dk densities on a k grid; static line probabilities at k = Omega:")
        preamble.extend(f"{name} k={_fmt(cfg.omega)} P={_fmt(p)}" for name, p in table.static_lines.items())
        if run.format == "json" and table.static_lines:
            rows = rows + [{"k": cfg.omega, **table.static_lines}]
            columns = columns + list(table.static_lines)
    _emit(render(rows, columns, run.format, preamble), run.out)
    return EXIT_OK


def cmd_imgamma(run: RunConfig) -> int:
    cfg = run.physical()
    motion = _motion(run, Orientation(run["orientation"]))
    row = im_gamma(cfg, motion).as_row()
    _emit(render([row], list(row), run.format), run.out)
    return EXIT_OK


def cmd_validate(run: RunConfig) -> int:
    tol = run["tol"]
    if tol is not None and not tol > 0:
        raise UsageError("--tol must be positive")
    results = run_checks(tol)
    text = "\n".join(r.line() for r in results) + "\n"
    _emit(text, run.out)
    failed = [r for r in results if not r.passed]
    return EXIT_VALIDATION if failed else EXIT_OK


HANDLERS = {
    "kernels": cmd_kernels,
    "angular": cmd_angular,
    "spectrum": cmd_spectrum,
    "imgamma": cmd_imgamma,
    "validate": cmd_validate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser, subparsers = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if ns.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    sub = subparsers[ns.command]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            run = _merge(ns.command, ns)
            code = HANDLERS[ns.command](run)
        except UsageError as exc:
            sub.print_usage(sys.stderr)
            print(f"{sub.prog}: error: {exc}", file=sys.stderr)
            code = EXIT_USAGE
        except OSError as exc:
            print(f"{sub.prog}: I/O error: {exc}", file=sys.stderr)
            code = EXIT_IO
        except ValueError as exc:
            print(f"{sub.prog}: error: {exc}", file=sys.stderr)
            code = EXIT_USAGE
    for w in caught:
        print(f"warning: {w.category.__name__}: {w.message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
