"""Command-line front end.

    pstchain check-pst --N 5 --alpha 1 --beta 1
    pstchain scan --N 5 --alpha 0 --beta 1 --t-max 2pi --steps 100 --output scan.csv

Exit status: 0 on success (including a structured refusal), 1 on a usage
error, 2 when a dynamic verification fails.
"""
import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from .common.enums import Command, ExitStatus, OutputFormat
from .common.exceptions import PSTChainError, UsageError
from .common.logger import logger
from .core.config import Settings
from .dao.artifact import ArtifactDAO
from .dto.run import ChainRequest, RunConfig
from .service.runner import RunService


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pstchain",
        description="Perfect state transfer and fractional revival in Krawtchouk spin chains",
    )
    parser.add_argument("command", nargs="?", choices=[c.value for c in Command])
    parser.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    parser.add_argument("--N", dest="N", type=int, help="chain length (N+1 sites)")
    parser.add_argument("--alpha", help="NNN strength: exact 'p/q' or decimal")
    parser.add_argument("--beta", help="NN strength: exact 'p/q' or decimal")
    parser.add_argument("--t", help="time, e.g. 'pi/2' or 0.75")
    parser.add_argument("--t-max", dest="t_max", help="scan window end, e.g. '2pi'")
    parser.add_argument("--steps", type=int, help="scan grid points")
    parser.add_argument("--source", type=int, help="initial site for evolve")
    parser.add_argument("--multiplier", type=int, help="use the k-th predicted time")
    parser.add_argument("--tol", type=float, help="verification tolerance (env PSTCHAIN_TOL)")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat])
    parser.add_argument("--output", help="write the artifact to this path instead of stdout")
    return parser


def load_config(argv: Optional[List[str]], dao: ArtifactDAO) -> RunConfig:
    args = build_parser().parse_args(argv)
    merged = dao.read_config(args.config) if args.config else {}
    for key, value in vars(args).items():
        if key != "config" and value is not None:
            merged[key] = value
    if "command" not in merged:
        raise UsageError("missing command")
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        raise UsageError(str(e))


def main(argv: Optional[List[str]] = None, stdout=None) -> int:
    dao = ArtifactDAO()
    try:
        # environment is read per invocation so PSTCHAIN_TOL applies immediately
        service = RunService(Settings())
        config = load_config(argv, dao)
        request = ChainRequest.model_validate(
            config.model_dump(include=set(ChainRequest.model_fields))
        )
        response = service.run(config.command, request)
        if not response.success:
            print(f"error: {response.message}", file=sys.stderr)
            return response.exit_status
        text = dao.render(response.data, config.resolved_format())
        dao.write(text, config.output, stream=stdout)
    except (PSTChainError, ValidationError) as e:
        logger.error(f"Usage error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ExitStatus.USAGE_ERROR
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitStatus.USAGE_ERROR
    return response.exit_status


if __name__ == "__main__":
    sys.exit(main())
