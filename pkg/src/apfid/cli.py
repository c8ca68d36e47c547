"""Command-line front end.

Thin client over the service handlers: every subcommand builds the same
request body the HTTP service accepts and calls the matching handler
in-process, so CLI and service cannot drift apart.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or
malformed input), 3 no consistent model at the configured tolerance.
Set APFID_LOG=debug|info|warning|error for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from pydantic import ValidationError

from .errors import ApfidError, ConfigError, CsvFormatError, NoConsistentModelError
from .service.handlers import handle_identify, handle_simulate, handle_spectrum
from .service.schemas import (
    IdentifyRequest,
    RunConfigBody,
    SimulateRequest,
    SpectrumRequest,
)

log = logging.getLogger("apfid")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NO_MODEL = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; this tool reserves 2 for
    # data errors, so remap.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="apfid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_id = sub.add_parser("identify", help="identify channels from telemetry CSV")
    p_id.add_argument("--data", help="telemetry CSV path (overrides config)")
    p_id.add_argument("--config", required=True, help="run config JSON path")
    p_id.add_argument("--out", help="report path (overrides config; default stdout)")
    p_id.add_argument("--jobs", type=int, default=1, help="parallel channel workers")
    p_id.add_argument("--delta", type=float, help="override tone resolution (rad/s)")
    p_id.add_argument("--max-order", type=int, dest="max_order", help="override order cap")
    p_id.add_argument(
        "--fit-tolerance", type=float, dest="fit_tolerance", help="override fit tolerance"
    )

    p_sp = sub.add_parser("spectrum", help="amplitude spectrum of one column")
    p_sp.add_argument("--data", required=True, help="telemetry CSV path")
    p_sp.add_argument("--column", required=True, help="column to analyse")
    p_sp.add_argument("--out", help="output CSV path (default stdout)")
    p_sp.add_argument("--omega-max", type=float, dest="omega_max")
    p_sp.add_argument("--grid-step", type=float, dest="grid_step")

    p_si = sub.add_parser("simulate", help="render a simulation spec to telemetry CSV")
    p_si.add_argument("--spec", required=True, help="simulation spec JSON path")
    p_si.add_argument("--out", help="output CSV path (default stdout)")

    return parser


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror or e}") from None


def _read_json(path: str) -> dict:
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path} is not valid JSON: {e}") from None


def _write_out(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise ConfigError(f"cannot write {path}: {e.strerror or e}") from None


def _cmd_identify(args: argparse.Namespace) -> int:
    if args.jobs < 1:
        raise _usage("--jobs must be at least 1")
    if args.max_order is not None and args.max_order < 1:
        raise _usage("--max-order must be at least 1")
    if args.fit_tolerance is not None and args.fit_tolerance <= 0:
        raise _usage("--fit-tolerance must be positive")
    if args.delta is not None and args.delta <= 0:
        raise _usage("--delta must be positive")

    raw = _read_json(args.config)
    if not isinstance(raw, dict):
        raise ConfigError(f"{args.config}: config root must be a JSON object")
    data_path = args.data or raw.get("data")
    if not data_path:
        raise _usage("no data file: pass --data or set 'data' in the config")
    out_path = args.out or raw.get("out")
    for key, value in (
        ("delta", args.delta),
        ("max_order", args.max_order),
        ("fit_tolerance", args.fit_tolerance),
    ):
        if value is not None:
            raw[key] = value
    raw.pop("data", None)
    raw.pop("out", None)

    csv_text = _read_text(data_path)
    log.info("identifying %d channel(s) from %s", len(raw.get("channels", [])), data_path)
    req = IdentifyRequest(csv=csv_text, config=RunConfigBody(**raw), jobs=args.jobs)
    report = handle_identify(req)
    _write_out(report, out_path)
    return EXIT_OK


def _cmd_spectrum(args: argparse.Namespace) -> int:
    req = SpectrumRequest(
        csv=_read_text(args.data),
        column=args.column,
        omega_max=args.omega_max,
        grid_step=args.grid_step,
    )
    s = handle_spectrum(req)
    rows = ["omega,amplitude"]
    rows += [f"{repr(float(w))},{repr(float(a))}" for w, a in zip(s.omegas, s.amplitudes)]
    _write_out("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    req = SimulateRequest(spec=_read_json(args.spec))
    _write_out(handle_simulate(req), args.out)
    return EXIT_OK


def _usage(message: str) -> SystemExit:
    print(f"apfid: error: {message}", file=sys.stderr)
    return SystemExit(EXIT_USAGE)


def _setup_logging() -> None:
    level_name = os.environ.get("APFID_LOG", "warning").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(name)s %(levelname)s %(message)s")


def cli_main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    commands = {
        "identify": _cmd_identify,
        "spectrum": _cmd_spectrum,
        "simulate": _cmd_simulate,
    }
    try:
        return commands[args.command](args)
    except SystemExit as e:
        return int(e.code or 0)
    except NoConsistentModelError as e:
        print(f"apfid: {e}", file=sys.stderr)
        for g, r in sorted(e.residuals.items()):
            print(f"apfid:   order {g}: residual {r:.6g}", file=sys.stderr)
        return EXIT_NO_MODEL
    except (CsvFormatError, ConfigError) as e:
        line = getattr(e, "line", None)
        suffix = f" (line {line})" if line is not None else ""
        print(f"apfid: {e}{suffix}", file=sys.stderr)
        return EXIT_DATA
    except ValidationError as e:
        print(f"apfid: bad config: {e}", file=sys.stderr)
        return EXIT_DATA
    except ApfidError as e:
        print(f"apfid: {e}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
