"""Command line entry points: render, eval, search, serve.

``render`` writes the canonical scene document for a dataset and view;
``eval`` prints a tab-separated stats table (optionally with a PNG report);
``search`` finds a one-vs-rest discriminant and writes the model document;
``serve`` runs the HTTP session service.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .dataset import read_csv, normalize
from .errors import ConfigError, GlcError
from .formats import format_float
from .linear_model import SearchParams, read_model, search_discriminant, write_model
from .rules import evaluate_selection, read_rule_document
from .scene import VIEW_KINDS, build_scene, serialize
from .transforms import PLACEMENT_ANCHORED, PLACEMENT_FREE, LayoutConfig


def _add_data_args(parser):
    parser.add_argument("--data", required=True, help="input CSV path")
    parser.add_argument("--class-column", default="class",
                        help="name of the class column (default: class)")
    parser.add_argument("--delimiter", default=",", help="CSV delimiter")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glcbench",
        description="Lossless 3D line-coordinate workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="write a canonical scene file")
    _add_data_args(p_render)
    p_render.add_argument("--view", required=True, choices=VIEW_KINDS)
    p_render.add_argument("--model", help="model document path")
    p_render.add_argument("--rule", help="rule document path")
    p_render.add_argument("--out", required=True, help="output scene path")
    p_render.add_argument("--placement", default=PLACEMENT_ANCHORED,
                          choices=(PLACEMENT_ANCHORED, PLACEMENT_FREE),
                          help="angled-polyline placement mode")
    p_render.add_argument("--layout-seed", type=int, default=0,
                          help="seed for free-3d segment azimuths")

    p_eval = sub.add_parser("eval", help="print rule/model statistics")
    _add_data_args(p_eval)
    p_eval.add_argument("--rule", help="rule document path")
    p_eval.add_argument("--model", help="model document path")
    p_eval.add_argument("--figure", help="also write a PNG report here")

    p_search = sub.add_parser("search", help="search a separating discriminant")
    _add_data_args(p_search)
    p_search.add_argument("--target", required=True, help="positive class label")
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--restarts", type=int, default=2)
    p_search.add_argument("--out", required=True, help="output model path")

    p_serve = sub.add_parser("serve", help="run the HTTP session service")
    p_serve.add_argument("--host", default=os.environ.get("GLCBENCH_HOST", "127.0.0.1"))
    p_serve.add_argument("--port", type=int,
                         default=int(os.environ.get("GLCBENCH_PORT", "8000")))
    return parser


def _load_dataset(args):
    return normalize(read_csv(args.data, class_column=args.class_column,
                              delimiter=args.delimiter))


def _load_rule_and_model(args):
    """Read --rule/--model; a rule's model_ref fills in a missing --model."""
    model = read_model(args.model) if args.model else None
    rules = []
    if args.rule:
        rule, model_ref = read_rule_document(args.rule)
        rules.append(rule)
        if model is None and model_ref:
            model = read_model(Path(args.rule).parent / model_ref)
    return model, rules


def _print_stats(stats) -> None:
    print(f"covered\t{stats.covered}")
    for label, count in stats.class_counts:
        print(f"class\t{label}\t{count}")
    print(f"purity\t{format_float(stats.purity)}")
    print(f"empty\t{'true' if stats.empty else 'false'}")
    if stats.accuracy is not None:
        print(f"accuracy\t{format_float(stats.accuracy)}")


def cmd_render(args) -> int:
    dataset = _load_dataset(args)
    model, rules = _load_rule_and_model(args)
    cfg = LayoutConfig(glcl_placement=args.placement, random_seed=args.layout_seed)
    scene = build_scene(dataset, args.view, model=model, rules=rules, cfg=cfg)
    data = serialize(scene)
    with open(args.out, "wb") as fh:
        fh.write(data)
    print(f"wrote {args.out} ({len(scene.glyphs)} glyphs, "
          f"{len(scene.overlays)} overlays)", file=sys.stderr)
    return 0


def cmd_eval(args) -> int:
    dataset = _load_dataset(args)
    model, rules = _load_rule_and_model(args)
    if model is None and not rules:
        raise ConfigError("eval needs --rule and/or --model")
    stats = evaluate_selection(dataset, model=model, rules=rules)
    _print_stats(stats)
    if args.figure:
        from .report import render_eval_figure

        render_eval_figure(stats, dataset, args.figure, model=model)
        print(f"wrote {args.figure}", file=sys.stderr)
    return 0


def cmd_search(args) -> int:
    dataset = _load_dataset(args)
    params = SearchParams(seed=args.seed, restarts=args.restarts)
    model, stats = search_discriminant(dataset, args.target, params)
    write_model(model, args.out)
    _print_stats(stats)
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


_COMMANDS = {
    "render": cmd_render,
    "eval": cmd_eval,
    "search": cmd_search,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GlcError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
