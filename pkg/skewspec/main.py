import argparse
import logging
import sys
from typing import Optional, Sequence

from .cli.handlers import (CommandContext, export_command, family_command, product_command,
                           search_command, spectrum_command, verify_command)
from .core.maxenergy import FAMILY_NAMES
from .core.products import ProductKind
from .errors import EXIT_INPUT, SkewSpecError
from .services.config_service import OUTPUT_FORMATS, ConfigService
from .services.verification_service import Theorem, VerificationService
from .storage.json_storage import JsonGraphStorage
from .storage.text_storage import TextGraphStorage

logger = logging.getLogger(__name__)

GRAPH_HELP = "graph file (.graph/.txt/.edges or .json), or seed:<name> for p2, c4, k4, k44, hypercube(d)"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewspec",
        description="Skew spectra and skew energy of oriented graph products.")
    parser.add_argument("--tol", type=float, help="absolute tolerance for spectrum comparisons")
    parser.add_argument("--output", choices=OUTPUT_FORMATS, help="report format")
    parser.add_argument("--limit", type=int, help="largest graph order any command will build")
    parser.add_argument("--workers", type=int, help="processes used by the orientation search")
    parser.add_argument("--seed", type=int, help="RNG seed for randomized verification")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log warnings and errors only")
    commands = parser.add_subparsers(dest="command", required=True)

    spectrum = commands.add_parser("spectrum", help="skew spectrum, energy and max-energy certificate")
    spectrum.add_argument("input", help=GRAPH_HELP)
    spectrum.add_argument("--undirected", action="store_true",
                          help="read edges and orient each from the smaller to the larger vertex")
    spectrum.set_defaults(handler=spectrum_command)

    product = commands.add_parser("product", help="orient a product of a bipartite H with G")
    product.add_argument("h", help="bipartite factor; " + GRAPH_HELP)
    product.add_argument("g", help="second factor; " + GRAPH_HELP)
    product.add_argument("--kind", required=True, choices=[kind.value for kind in ProductKind])
    product.add_argument("--kn", help="oriented complete graph on |V(G)| vertices, required by --kind lex")
    product.add_argument("--out", help="write the oriented product here")
    product.set_defaults(handler=product_command)

    verify = commands.add_parser("verify", help="compare predicted and computed product spectra")
    verify.add_argument("h", nargs="?", help="bipartite factor; " + GRAPH_HELP)
    verify.add_argument("g", nargs="?", help="second factor; " + GRAPH_HELP)
    verify.add_argument("--theorem", required=True, choices=[theorem.value for theorem in Theorem])
    verify.add_argument("--random", action="store_true", help="draw random factors instead of reading them")
    verify.add_argument("--m", type=int, default=6, help="order of the random bipartite factor")
    verify.add_argument("--n", type=int, default=5, help="order of the random second factor")
    verify.add_argument("--trials", type=int, default=1)
    verify.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    verify.set_defaults(handler=verify_command)

    family = commands.add_parser("family", help="build and certify an iterated max-energy family")
    family.add_argument("--name", required=True, choices=FAMILY_NAMES)
    family.add_argument("--r", type=int, required=True, help="iteration depth")
    family.add_argument("--out", help="write the family member here")
    family.set_defaults(handler=family_command)

    search = commands.add_parser("search", help="enumerate orientations of a regular graph")
    search.add_argument("input", help=GRAPH_HELP)
    search.add_argument("--undirected", action="store_true", help="read the file as an edge list")
    search.add_argument("--all", action="store_true", help="report every orientation, not only certified ones")
    search.add_argument("--histogram", action="store_true", help="report the energy distribution instead")
    search.set_defaults(handler=search_command)

    export = commands.add_parser("export", help="write the skew-adjacency matrix, spectrum or graph")
    export.add_argument("input", help=GRAPH_HELP)
    export.add_argument("--what", choices=("matrix", "spectrum", "graph"), default="matrix")
    export.add_argument("--undirected", action="store_true",
                        help="read edges and orient each from the smaller to the larger vertex")
    export.add_argument("--out", help="write here instead of standard output")
    export.set_defaults(handler=export_command)
    return parser


def main(argv: Optional[Sequence[str]] = None, environ=None) -> int:
    """Parse the command line, wire the services and run one command."""
    args = build_parser().parse_args(argv)

    # Enable logging
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s", level=level, stream=sys.stderr
    )

    try:
        # --- Dependency Injection ---
        # 1. Resolve configuration: defaults, then .env and the environment, then flags
        config = ConfigService(environ=environ).resolve(
            tolerance=args.tol, size_limit=args.limit, output=args.output, workers=args.workers, seed=args.seed)

        # 2. Create storage instances; the text format is the fallback for unknown suffixes
        storages = [JsonGraphStorage(), TextGraphStorage()]

        # 3. Create service instances and inject dependencies
        verification_service = VerificationService(config=config)

        # 4. Hand everything to the command handler
        context = CommandContext(config=config, storages=storages, verification_service=verification_service)
        return args.handler(args, context)
    except SkewSpecError as e:
        logger.error("%s", e)
        return e.exit_code
    except OSError as e:
        logger.error("%s", e)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
