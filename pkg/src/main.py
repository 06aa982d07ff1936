"""Command-line front end.

Sub-commands validate, generate and augment networks, compute distances and
run the heat-map and classification experiments. Results go to stdout,
diagnostics to stderr; the exit code is 0 on success, 2 for input or I/O
errors, 3 when an exact method exceeds its enumeration guard and 4 when the
requested settings cannot run.
"""

import argparse
import json
import os
import sys
from collections.abc import Sequence

from ruamel.yaml.error import YAMLError

from src import (
    DEFAULT_CONFIG_FILE_PATH,
    DEFAULT_TOLERANCE,
    ENV_CONFIG_FILE_PATH_KEY,
    EXIT_GUARD_EXCEEDED,
    EXIT_INFEASIBLE,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    config_parser,
    get_logger,
    read_config,
)
from src.approx import approx_dEE, approx_dPE
from src.approx_config import get_approx_config
from src.config_utils import coerce_flag, coerce_number
from src.errors import ConfigInfeasible, NetmetricError, ParseError, TooLarge, ValidationError
from src.exact import d_C_exact, d_C_lemma, d_EE_exact, d_PE_exact, d_PEQ_exact
from src.experiments import run_classify, run_heatmap
from src.generators import GenSpec, Model, generate
from src.network import triangle_violations
from src.network_io import load_network, save_network, save_sampled_space
from src.sampled_space import midpoint_augment
from src.thread_config import get_max_threads

LOGGER = get_logger()

METHODS = ("exact-pe", "exact-c", "exact-ee", "exact-peq", "lemma", "approx", "approx-pe")
MIN_CLASSIFY_PER_MODEL = 2
MIN_CLASSIFY_NODES = 3
# Manifest keys and, for the numeric ones, their type
MANIFEST_KEYS = {
    "models": list,
    "per_model": int,
    "nodes": tuple,
    "interior": bool,
    "seed": int,
    "out": str,
    "sigma": float,
    "feat_dim": int,
}


def _load_config_safely():
    """Best-effort config load; ``None`` when the file is missing or unreadable."""
    config_path = os.environ.get(ENV_CONFIG_FILE_PATH_KEY, DEFAULT_CONFIG_FILE_PATH)
    try:
        return read_config(config_path=config_path)
    except (OSError, ValueError, YAMLError) as e:
        LOGGER.warning(f"main: read_config failed: {e!s}")
        return None


def _on_off(value: str) -> bool:
    flag = coerce_flag(value)
    if flag is None:
        raise argparse.ArgumentTypeError(f"expected on or off, got '{value}'")
    return flag


def parse_gammas(value: str) -> list[float]:
    """Parse ``"1..10"`` (integer range) or ``"1,3,5"`` (explicit values)."""
    value = value.strip()
    try:
        if ".." in value:
            first, last = (int(part) for part in value.split("..", 1))
            return [float(g) for g in range(first, last + 1)]
        return [float(part) for part in value.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid gamma list '{value}', expected a..b or a,b,c") from e


def _node_range(value: str) -> tuple[int, int]:
    try:
        return config_parser.parse_node_range(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _print_json(document: dict) -> None:
    print(json.dumps(document, sort_keys=True))


# =============================================================================
# Commands
# =============================================================================


def cmd_validate(path: str, tol: float = DEFAULT_TOLERANCE) -> int:
    """Validate a network file and print a one-line summary."""
    net = load_network(path, tol)
    violations = triangle_violations(net, tol)
    metric = "metric" if not violations else f"{len(violations)} triangle violations"
    print(f"valid network: {net.size} nodes ({metric})")
    return EXIT_OK


def cmd_dist(
    path_a: str,
    path_b: str,
    method: str,
    interior: bool | None = None,
    seed: int | None = None,
    as_json: bool = False,
    config=None,
) -> int:
    """Compute one distance between two network files and print it."""
    tol = config_parser.get_tolerance(config)
    a, b = load_network(path_a, tol), load_network(path_b, tol)
    witness = None
    match method:
        case "exact-pe":
            value, mapping = d_PE_exact(a, b)
            witness = list(mapping.assignment)
        case "exact-c":
            value, correspondence = d_C_exact(a, b)
            witness = [list(pair) for pair in correspondence.sorted_pairs()]
        case "exact-ee":
            value = d_EE_exact(a, b)
        case "exact-peq":
            value, mapping = d_PEQ_exact(midpoint_augment(a), midpoint_augment(b))
            witness = list(mapping.assignment)
        case "lemma":
            value = d_C_lemma(a, b)
        case _:
            cfg = get_approx_config(config, use_interior=interior, seed=seed)
            value = approx_dPE(a, b, cfg) if method == "approx-pe" else approx_dEE(a, b, cfg)
    if as_json:
        document = {"method": method, "value": float(value)}
        if witness is not None:
            document["witness"] = witness
        _print_json(document)
    else:
        print(repr(float(value)))
    return EXIT_OK


def cmd_heatmap(
    gammas: Sequence[float],
    out: str,
    interior: bool | None = None,
    seed: int | None = None,
    config=None,
) -> int:
    """Write the approximate and exact distance matrices of the gamma family."""
    if len(gammas) < 2:
        raise ValidationError(f"a heat map needs at least two gammas, got {len(gammas)}")
    cfg = get_approx_config(config, use_interior=interior, seed=seed)
    result = run_heatmap(gammas, cfg, out, get_max_threads(config))
    for path in result.paths:
        print(path)
    return EXIT_OK


def _manifest_value(path: str, key: str, value):
    """Type-check one manifest value; nodes and models keep their flag forms."""
    if key == "models":
        if isinstance(value, str):
            return value.split(",")
        if isinstance(value, list) and all(isinstance(item, str) for item in value):
            return list(value)
    elif key == "nodes":
        try:
            return config_parser.parse_node_range(value)
        except ValueError as e:
            raise ParseError(str(e), path=path) from e
    elif key == "interior":
        coerced = coerce_flag(value)
        if coerced is not None:
            return coerced
    elif key == "out":
        if isinstance(value, str) and value:
            return value
    else:
        coerced = coerce_number(value, MANIFEST_KEYS[key])
        if coerced is not None:
            return coerced
    raise ParseError(f"manifest key '{key}' has invalid value {value!r}", path=path)


def _load_manifest(path: str) -> dict:
    """Read a classification manifest whose keys mirror the classify flags.

    Raises:
        ParseError: unreadable file, malformed JSON or a value of the wrong type
    """
    try:
        with open(path, encoding="utf-8") as handle:
            manifest = json.load(handle)
    except OSError as e:
        raise ParseError(f"cannot read manifest: {e.strerror or e!s}", path=path) from e
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path=path, line=e.lineno, column=e.colno) from e
    if not isinstance(manifest, dict):
        raise ParseError("manifest must be a JSON object", path=path, line=1, column=1)
    settings = {}
    for key, value in manifest.items():
        if key not in MANIFEST_KEYS:
            LOGGER.warning(f"{path}: ignoring unknown manifest key '{key}'")
        elif value is not None:
            settings[key] = _manifest_value(path, key, value)
    return settings


def cmd_classify(
    models: Sequence[str] | None = None,
    per_model: int | None = None,
    nodes: tuple[int, int] | None = None,
    interior: bool | None = None,
    seed: int | None = None,
    out: str | None = None,
    manifest: str | None = None,
    config=None,
) -> int:
    """Generate networks per model, compare them and write matrix, embedding and metrics."""
    settings = _load_manifest(manifest) if manifest else {}
    models = models if models is not None else settings.get("models")
    nodes = nodes if nodes is not None else settings.get("nodes")
    per_model = per_model if per_model is not None else settings.get("per_model")
    interior = interior if interior is not None else settings.get("interior")
    seed = seed if seed is not None else settings.get("seed")
    out = out or settings.get("out") or "results"

    models = [model.strip().lower() for model in models] if models else config_parser.get_models(config)
    unknown = [model for model in models if model not in config_parser.VALID_MODELS]
    if unknown:
        raise ValidationError(f"unknown models {unknown}, expected {', '.join(config_parser.VALID_MODELS)}")
    per_model = per_model if per_model is not None else config_parser.get_per_model(config)
    nodes = nodes or config_parser.get_nodes(config)
    if per_model < MIN_CLASSIFY_PER_MODEL or nodes[0] < MIN_CLASSIFY_NODES:
        raise ConfigInfeasible(
            f"classification needs per-model >= {MIN_CLASSIFY_PER_MODEL} and nodes >= {MIN_CLASSIFY_NODES}",
        )
    cfg = get_approx_config(config, use_interior=interior, seed=seed)
    result = run_classify(
        models,
        per_model,
        nodes,
        cfg,
        out,
        get_max_threads(config),
        sigma=settings.get("sigma", config_parser.get_sigma(config)),
        feat_dim=settings.get("feat_dim", config_parser.get_feat_dim(config)),
    )
    _print_json(result.metrics.to_dict())
    return EXIT_OK


def cmd_gen(spec: GenSpec, out: str, index: int = 0) -> int:
    """Generate one network and write it as JSON (or CSV by extension)."""
    print(save_network(generate(spec, index), out))
    return EXIT_OK


def cmd_augment(path: str, out: str, tol: float = DEFAULT_TOLERANCE) -> int:
    """Write the midpoint-augmented sampled space of a network."""
    space = midpoint_augment(load_network(path, tol))
    print(save_sampled_space(space, out))
    return EXIT_OK


# =============================================================================
# Argument Parsing
# =============================================================================


def _add_interior(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--interior",
        type=_on_off,
        nargs="?",
        const=True,
        default=None,
        metavar="on|off",
        help="Augment networks with edge midpoints before approximating (default from config).",
    )
    parser.add_argument("--seed", type=int, default=None, help="Seed for generators and local search.")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-command per operation."""
    parser = argparse.ArgumentParser(
        prog="netmetric",
        description="Distances between weighted networks. See config.yaml for runtime settings.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Check a network file.")
    validate.add_argument("path")

    dist = commands.add_parser("dist", help="Distance between two network files.")
    dist.add_argument("path_a")
    dist.add_argument("path_b")
    dist.add_argument("--method", choices=METHODS, default="exact-pe")
    dist.add_argument("--json", action="store_true", dest="as_json", help="Print value and witness as JSON.")
    _add_interior(dist)

    heatmap = commands.add_parser("heatmap", help="Distance heat map over the gamma family.")
    heatmap.add_argument("--gammas", type=parse_gammas, default=None, help="a..b or a,b,c (default from config).")
    heatmap.add_argument("--method", choices=("approx",), default="approx")
    heatmap.add_argument("--out", required=True, help="CSV path of the approximate matrix.")
    _add_interior(heatmap)

    classify = commands.add_parser("classify", help="Model classification experiment.")
    classify.add_argument("--models", type=lambda value: value.split(","), default=None)
    classify.add_argument("--per-model", type=int, default=None)
    classify.add_argument("--nodes", type=_node_range, default=None, help="n or nmin..nmax")
    classify.add_argument("--out", default=None, help="Output directory.")
    classify.add_argument("--manifest", default=None, help="JSON file whose keys mirror these flags.")
    _add_interior(classify)

    gen = commands.add_parser("gen", help="Generate a synthetic network.")
    gen.add_argument("--model", choices=[model.value for model in Model], required=True)
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--sigma", type=float, default=None)
    gen.add_argument("--feat-dim", type=int, default=None)
    gen.add_argument("--gamma", type=float, default=1.0)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--index", type=int, default=0, help="Stream index within the seed.")
    gen.add_argument("--out", required=True)

    augment = commands.add_parser("augment", help="Midpoint-augment a network.")
    augment.add_argument("path")
    augment.add_argument("--out", required=True)
    return parser


def _dispatch(args: argparse.Namespace, config) -> int:
    match args.command:
        case "validate":
            return cmd_validate(args.path, config_parser.get_tolerance(config))
        case "dist":
            return cmd_dist(args.path_a, args.path_b, args.method, args.interior, args.seed, args.as_json, config)
        case "heatmap":
            gammas = args.gammas or config_parser.get_gammas(config)
            return cmd_heatmap(gammas, args.out, args.interior, args.seed, config)
        case "classify":
            return cmd_classify(
                args.models, args.per_model, args.nodes, args.interior, args.seed, args.out, args.manifest, config
            )
        case "gen":
            spec = GenSpec(
                model=Model(args.model),
                n=args.n if args.n is not None else config_parser.get_nodes(config)[0],
                sigma=args.sigma if args.sigma is not None else config_parser.get_sigma(config),
                feat_dim=args.feat_dim if args.feat_dim is not None else config_parser.get_feat_dim(config),
                gamma=args.gamma,
                seed=args.seed if args.seed is not None else config_parser.get_seed(config),
            )
            return cmd_gen(spec, args.out, args.index)
        case _:
            return cmd_augment(args.path, args.out, config_parser.get_tolerance(config))


def exit_code_for(error: Exception) -> int:
    """Map an exception to the command-line exit code."""
    if isinstance(error, TooLarge):
        return EXIT_GUARD_EXCEEDED
    if isinstance(error, ConfigInfeasible):
        return EXIT_INFEASIBLE
    return EXIT_INPUT_ERROR


def main(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the sub-command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT_ERROR
    config = _load_config_safely()
    try:
        return _dispatch(args, config)
    except (NetmetricError, OSError) as e:
        code = exit_code_for(e)
        LOGGER.error(f"{args.command} failed: {e!s}")
        print(f"error: {e!s}", file=sys.stderr)
        if isinstance(e, TooLarge):
            print("hint: use --method approx for networks beyond the exact enumeration guards", file=sys.stderr)
        return code


if __name__ == "__main__":  # pragma: no cover -- script entry, not test-callable
    sys.exit(main())
