"""Command-line interface: thin flag-driven wrappers over the modules.

All results print as JSON on stdout (convert prints the converted
payload raw); exit code 0 means no errors. ``--offline`` forces the
deterministic fallback providers.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import build_deps, load_config
from .evals import (
    eval_recall,
    load_cases_jsonl,
    make_paraphrase_cases,
    make_verbatim_cases,
)
from .gridsearch import GridAxis, GridError, ParamGridSpec, run_sweep
from .ir import CodeParseError, WorkflowJsonError, parse_code, parse_json, to_code, to_json, validate
from .kb import chunk_code, generate_doc, retrieve_chunks
from .wfgen import GenCase, evaluate_generation
from .providers.offline import SequenceChat


def _print(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))


def _deps(args) -> "Deps":
    config = load_config(getattr(args, "config", None))
    return build_deps(
        kb_dir=getattr(args, "kb", None) or config.kb_dir,
        config=config,
        offline=True if getattr(args, "offline", False) else None,
    )


def _read_graph(path: str, fmt: str, registry):
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "code":
        return parse_code(text, registry)
    return parse_json(text)


def _parse_axis(raw: str) -> GridAxis:
    if "=" not in raw:
        raise GridError(f"axis '{raw}' must look like node.input=v1,v2")
    target, _, values_raw = raw.partition("=")
    if "." not in target:
        raise GridError(f"axis target '{target}' must look like node_id.input_name")
    node_id, _, input_name = target.partition(".")
    values = []
    for piece in values_raw.split(","):
        piece = piece.strip()
        try:
            values.append(json.loads(piece))
        except json.JSONDecodeError:
            values.append(piece)
    return GridAxis(node_id=node_id, input_name=input_name, values=values)


def cmd_ingest(args) -> int:
    deps = _deps(args)
    summary = deps.kb.ingest(args.path)
    _print(summary.to_dict())
    return 0


def cmd_convert(args) -> int:
    deps = _deps(args)
    graph = _read_graph(args.file, args.from_format, deps.registry)
    if args.to_format == "code":
        sys.stdout.write(to_code(graph, deps.registry))
    else:
        sys.stdout.write(to_json(graph).decode("utf-8") + "\n")
    return 0


def cmd_validate(args) -> int:
    deps = _deps(args)
    graph = _read_graph(args.file, args.format, deps.registry)
    report = validate(graph, deps.registry)
    _print(report.to_dict())
    return 0 if report.passed else 1


def cmd_recommend(args) -> int:
    deps = _deps(args)
    from .agents import Assistant, SessionStore

    assistant = Assistant(deps)
    store = SessionStore()
    session = store.get_or_create("cli")
    if args.context:
        session.append("user", args.context)
    if args.kind == "workflows":
        from .retrieval import expand_intent
        from .wfgen import propose

        intent = expand_intent(args.query, llm=deps.providers.chat)
        cards = [c.to_dict() for c in propose(intent, deps)]
    elif args.kind == "nodes":
        cards = [a.to_dict() for a in assistant.recommend_nodes(args.query, session).attachments]
    else:
        cards = [a.to_dict() for a in assistant.recommend_models(args.query, session).attachments]
    _print({"cards": cards})
    return 0


def cmd_docgen(args) -> int:
    deps = _deps(args)
    spec = deps.kb.lookup_node(args.class_type)
    files = []
    repo = Path(args.repo)
    for path in sorted(repo.rglob("*.py")):
        try:
            files.append((str(path.relative_to(repo)), path.read_text(encoding="utf-8")))
        except (OSError, UnicodeDecodeError):
            continue
    chunks = chunk_code(files, chunk_size=args.chunk_size, overlap=args.overlap)
    context = retrieve_chunks(
        spec, chunks, top_m=args.top_m, emb=deps.providers.emb, cfg=deps.config.retrieval
    )
    chat = deps.providers.chat
    llm = None if chat is None or chat.offline else chat
    doc = generate_doc(spec, context, llm=llm)
    if args.save:
        spec.doc = doc
        deps.kb.save_node(spec)
    _print(doc.to_dict())
    return 0


def cmd_paramsearch(args) -> int:
    deps = _deps(args)
    graph = _read_graph(args.workflow, "json", deps.registry)
    grid = ParamGridSpec(axes=[_parse_axis(a) for a in args.axis], cap=args.cap)
    result = run_sweep(
        graph, grid, deps.providers.executor, parallelism=args.parallelism
    )
    _print(result.to_dict())
    return 0


def cmd_eval_recall(args) -> int:
    deps = _deps(args)
    if args.generate:
        kind = args.kind or "workflow"
        if args.generate == "verbatim":
            cases = make_verbatim_cases(deps.kb, kind, limit=args.limit)
        else:
            cases = make_paraphrase_cases(deps.kb, kind, seed=args.seed, limit=args.limit)
        if args.save_cases:
            Path(args.save_cases).write_text(
                "".join(json.dumps(c.to_dict()) + "\n" for c in cases), encoding="utf-8"
            )
    else:
        if not args.cases:
            print("error: provide a cases file or --generate", file=sys.stderr)
            return 2
        cases = load_cases_jsonl(args.cases)
    report = eval_recall(cases, deps, k=args.k)
    _print(report.to_dict())
    return 0


def cmd_eval_gen(args) -> int:
    deps = _deps(args)
    cases = []
    for line in Path(args.cases).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        from .ir import graph_from_obj

        cases.append(GenCase(intent=obj["intent"], reference=graph_from_obj(obj["reference"])))
    if args.echo:
        # Self-check mode: the provider replays each reference as code.
        deps.providers.chat = SequenceChat(
            [to_code(c.reference, deps.registry) for c in cases], offline=True
        )
    report = evaluate_generation(cases, deps)
    _print(report.to_dict())
    return 0


def cmd_serve(args) -> int:
    deps = _deps(args)
    from .service import serve

    serve(deps, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowcopilot",
        description="Copilot engine for node-graph generation workflows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--kb", help="knowledge-base directory (or COPILOT_KB_DIR)")
        p.add_argument("--config", help="YAML/JSON config file")
        p.add_argument("--offline", action="store_true", help="force offline fallback providers")

    p = sub.add_parser("ingest", help="ingest a KB directory or archive")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("convert", help="convert between workflow JSON and code")
    p.add_argument("file")
    p.add_argument("--from", dest="from_format", choices=("json", "code"), default="json")
    p.add_argument("--to", dest="to_format", choices=("json", "code"), default="code")
    common(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("validate", help="validate a workflow against the registry")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "code"), default="json")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("recommend", help="recommend workflows, nodes, or models")
    p.add_argument("--kind", choices=("workflows", "nodes", "models"), required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--context", help="extra session context, e.g. 'I use SDXL'")
    common(p)
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("docgen", help="generate node documentation from a repository")
    p.add_argument("--class-type", dest="class_type", required=True)
    p.add_argument("--repo", required=True, help="path to the node's source repository")
    p.add_argument("--chunk-size", dest="chunk_size", type=int, default=1200)
    p.add_argument("--overlap", type=int, default=200)
    p.add_argument("--top-m", dest="top_m", type=int, default=5)
    p.add_argument("--save", action="store_true", help="store the doc back into the KB")
    common(p)
    p.set_defaults(func=cmd_docgen)

    p = sub.add_parser("paramsearch", help="run a parameter grid sweep")
    p.add_argument("--workflow", required=True)
    p.add_argument(
        "--axis",
        action="append",
        required=True,
        help='axis spec like "3.cfg=6,7,8"; repeatable',
    )
    p.add_argument("--parallelism", type=int, default=4)
    p.add_argument("--cap", type=int, default=64)
    common(p)
    p.set_defaults(func=cmd_paramsearch)

    p = sub.add_parser("eval-recall", help="recall@k over gold cases")
    p.add_argument("cases", nargs="?", help="JSONL cases file")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--generate", choices=("verbatim", "paraphrase"),
                   help="synthesize cases from the KB instead of a file")
    p.add_argument("--kind", choices=("workflow", "node", "model"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int)
    p.add_argument("--save-cases", dest="save_cases", help="also write generated cases here")
    common(p)
    p.set_defaults(func=cmd_eval_recall)

    p = sub.add_parser("eval-gen", help="generation quality over gold references")
    p.add_argument("cases", help="JSONL of {intent, reference}")
    p.add_argument("--echo", action="store_true",
                   help="harness self-check: provider replays the references")
    common(p)
    p.set_defaults(func=cmd_eval_gen)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int)
    common(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WorkflowJsonError, CodeParseError, GridError, ValueError, OSError, KeyError) as exc:
        print(json.dumps({"error": {"kind": type(exc).__name__, "detail": str(exc)}}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
