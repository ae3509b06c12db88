"""Node documentation generation from repository code.

Relevant code chunks are retrieved with the same hybrid score the
recommendation pipeline uses (query: class type + parameter names),
then a chat provider writes the doc, which must pass structural
validation: non-empty description, every required input and every
output documented, no names beyond the node spec. One retry with the
validation errors appended; offline, a deterministic template doc is
built straight from the node spec.
"""

from __future__ import annotations

import json
import logging
from importlib import resources

from ..providers.base import ChatProvider, ProviderError
from ..retrieval import RetrievalConfig, combined_score, lexical_sim
from .. import kernels
from .chunks import CodeChunk
from .model import NodeDoc, NodeSpec

logger = logging.getLogger(__name__)


class DocGenError(RuntimeError):
    def __init__(self, message: str, problems: list[str] | None = None):
        self.problems = problems or []
        super().__init__(message)


def _prompt_template() -> str:
    return (
        resources.files("flowcopilot").joinpath("assets/docgen_prompt.txt").read_text("utf-8")
    )


def retrieve_chunks(
    spec: NodeSpec,
    chunks: list[CodeChunk],
    top_m: int = 5,
    emb=None,
    cfg: RetrievalConfig | None = None,
) -> list[CodeChunk]:
    """Top chunks for a node by the combined retrieval score, stable order."""
    if top_m < 1:
        raise ValueError("top_m must be >= 1")
    if not chunks:
        return []
    if emb is None:
        from ..providers.offline import NgramEmbed

        emb = NgramEmbed()
    cfg = cfg or RetrievalConfig()
    query = " ".join([spec.class_type] + [p.name for p in spec.inputs])
    vectors = emb.embed([query] + [c.text for c in chunks])
    sims = kernels.cosine01_batch(vectors[0], vectors[1:])
    scored = [
        (combined_score(sim_s, lexical_sim(query, chunk.text), cfg), i, chunk)
        for i, (chunk, sim_s) in enumerate(zip(chunks, sims))
    ]
    scored.sort(key=lambda t: (-t[0], t[1]))
    return [chunk for _, _, chunk in scored[:top_m]]


def doc_problems(doc: NodeDoc, spec: NodeSpec) -> list[str]:
    """Structural defects of a doc against its spec; empty means valid."""
    problems = []
    if not doc.description.strip():
        problems.append("description is empty")
    input_names = {p.name for p in spec.inputs}
    output_names = {o.name for o in spec.outputs}
    for p in spec.inputs:
        if p.required and p.name not in doc.input_docs:
            problems.append(f"required input '{p.name}' is undocumented")
    for o in spec.outputs:
        if o.name not in doc.output_docs:
            problems.append(f"output '{o.name}' is undocumented")
    for name in doc.input_docs:
        if name not in input_names:
            problems.append(f"documented input '{name}' does not exist")
    for name in doc.output_docs:
        if name not in output_names:
            problems.append(f"documented output '{name}' does not exist")
    return problems


def fallback_doc(spec: NodeSpec) -> NodeDoc:
    """Deterministic template doc echoing the node spec's names and types."""
    title = spec.display_name or spec.class_type
    category = f" in category '{spec.category}'" if spec.category else ""
    description = (
        f"{title} is a workflow node{category} with {len(spec.inputs)} input(s) "
        f"and {len(spec.outputs)} output(s)."
    )
    input_docs = {
        p.name: f"{p.name} ({p.type}{', required' if p.required else ''})."
        for p in spec.inputs
    }
    output_docs = {o.name: f"{o.name} ({o.type}) produced by {title}." for o in spec.outputs}
    return NodeDoc(description=description, input_docs=input_docs, output_docs=output_docs)


def _parse_doc(text: str) -> NodeDoc:
    cleaned = text.strip()
    if cleaned.startswith("```"):
        cleaned = cleaned.strip("`")
        if cleaned.startswith("json"):
            cleaned = cleaned[4:]
    start, end = cleaned.find("{"), cleaned.rfind("}")
    if start < 0 or end <= start:
        raise DocGenError("provider reply contains no JSON object")
    try:
        obj = json.loads(cleaned[start : end + 1])
    except json.JSONDecodeError as exc:
        raise DocGenError(f"provider reply is not valid JSON: {exc}") from exc
    return NodeDoc.from_dict(obj)


def generate_doc(
    spec: NodeSpec,
    context_chunks: list[CodeChunk],
    llm: ChatProvider | None = None,
) -> NodeDoc:
    """Generate a structurally valid doc for the node.

    Without a provider (offline mode) the template fallback is returned
    directly. Provider output failing validation is retried once with
    the problems appended to the prompt, then rejected.
    """
    if llm is None:
        return fallback_doc(spec)

    chunk_text = "\n\n".join(
        f"# {c.source_path} [{c.start_offset}:{c.end_offset}]\n{c.text}"
        for c in context_chunks
    )
    prompt = _prompt_template().format(
        spec_json=json.dumps(spec.to_dict(), indent=2, sort_keys=True),
        chunks=chunk_text or "(no code available)",
    )

    problems: list[str] = []
    for attempt in range(2):
        content = prompt
        if problems:
            content += "\n\nYour previous reply had these problems; fix them:\n" + "\n".join(
                f"- {p}" for p in problems
            )
        try:
            reply = llm.complete(
                [{"role": "user", "content": content}],
                response_schema={
                    "type": "object",
                    "required": ["description", "input_docs", "output_docs"],
                },
            )
        except ProviderError as exc:
            raise DocGenError(f"chat provider failed: {exc}") from exc
        try:
            doc = _parse_doc(reply)
            problems = doc_problems(doc, spec)
        except DocGenError as exc:
            problems = [str(exc)]
            doc = None
        if doc is not None and not problems:
            return doc
        logger.warning("doc for %s failed validation (attempt %d): %s",
                       spec.class_type, attempt + 1, problems)
    raise DocGenError(
        f"documentation for '{spec.class_type}' failed validation after retry",
        problems,
    )
