import argparse
import asyncio
import sys

from dotenv import load_dotenv
from pydantic import ValidationError

from commands.coordinator import COMMAND_TOOLS, CommandCoordinator, RunConfig, validation_message
from config.cli_help import COMMAND_HELP, EPILOG, FLAG_HELP
from core.errors import FracTSError
from core.logging_system import configure_logging
from tools.data_loader import load_config
from tools.report_generator import artifact_summary

load_dotenv()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracts",
        description="psi-Hilfer fractional calculus on time scales",
        epilog=EPILOG,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in COMMAND_TOOLS:
        cmd = sub.add_parser(command, help=COMMAND_HELP[command], description=COMMAND_HELP[command],
                             epilog=EPILOG)
        cmd.add_argument("--input", help=FLAG_HELP["input"])
        cmd.add_argument("--out", help=FLAG_HELP["out"])
        cmd.add_argument("--grid-N", dest="grid_N", type=int, help=FLAG_HELP["grid_N"])
        cmd.add_argument("--tol", type=float, help=FLAG_HELP["tol"])
        cmd.add_argument("--seed", type=int, help=FLAG_HELP["seed"])
        cmd.add_argument("--alpha", type=float, help=FLAG_HELP["alpha"])
        cmd.add_argument("--beta", type=float, help=FLAG_HELP["beta"])
        cmd.add_argument("--psi", help=FLAG_HELP["psi"])
        cmd.add_argument("--t", type=float, help=FLAG_HELP["t"])
        cmd.add_argument("--config", help=FLAG_HELP["config"])
    return parser


def make_run_config(args: argparse.Namespace) -> RunConfig:
    """Settings file values, overridden by whatever flags were given."""
    settings = load_config(args.config)
    flags = {
        "input_path": args.input,
        "output_dir": args.out,
        "grid_N": args.grid_N,
        "tol": args.tol,
        "seed": args.seed,
        "alpha": args.alpha,
        "beta": args.beta,
        "psi": args.psi,
        "t": args.t,
    }
    settings.update({k: v for k, v in flags.items() if v is not None})
    return RunConfig(command=args.command, **settings)


async def main(argv=None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        config = make_run_config(args)
    except ValidationError as exc:
        print(validation_message(exc), file=sys.stderr)
        return 2
    except FracTSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code

    coordinator = CommandCoordinator(str(config.log_dir))
    try:
        code = await coordinator.run(config)
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    result = coordinator.last_result
    if result.error:
        print(result.error, file=sys.stderr)
    files = (result.data or {}).get("files", {})
    if files:
        print(artifact_summary(files))
    return code


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
