"""``quantal``: command-line entry point."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .cooccur import (SCHEMES, CooccurrenceConfig, CooccurrenceError, CooccurrenceMatrix,
                      build_matrix, cosine, dolphin_config, dolphin_matrix,
                      export_singleton_model, normalize, vector)
from .grammar import CfgSpec, GrammarError, parse_sentence, type_dictionary
from .oracle import ModelError, OracleUnsupported, RelModel, truth_bc
from .quantifiers import QuantifierError
from .rel import RelBackend, rel_truth
from .sweep import equiv_sweep
from .term import TermError, compile_sentence, evaluate, render
from .vect import DistModel, boolean_sentence_value, dist_sentence_value, pointwise_entails
from .worked import format_table, reproduce_worked_example

DEFAULT_SEED = 0


class Failure(Exception):
    """A requested assertion did not hold; carries the report to print."""

    def __init__(self, outputs: dict, text: str):
        super().__init__(text)
        self.outputs = outputs
        self.text = text


# -- loading -------------------------------------------------------------------

def _read_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_model(path: str | None):
    if path is None:
        return None
    data = _read_json(path)
    return RelModel.from_dict(data) if "universe" in data else DistModel.from_dict(data)


def _dictionary(args, model=None):
    cfg = CfgSpec.load(args.grammar) if args.grammar else CfgSpec.fragment()
    return type_dictionary(cfg, extra=model.lexicon() if model is not None else None)


def _digest(args) -> str:
    h = hashlib.sha256()
    for key, value in sorted(vars(args).items()):
        if key in ("func", "json"):
            continue
        h.update(f"{key}={value!r}\n".encode())
        if isinstance(value, str) and key in ("grammar", "model", "corpus", "config", "matrix"):
            try:
                h.update(Path(value).read_bytes())
            except OSError:
                pass
    return h.hexdigest()[:16]


def _links(diagram) -> str:
    return " ".join(f"({i},{j})" for i, j in diagram.links) or "none"


# -- commands --------------------------------------------------------------------
# each returns (outputs, text); raising Failure signals a failed assertion

def cmd_parse(args):
    model = _load_model(args.model)
    parsed = parse_sentence(args.sentence, _dictionary(args, model))
    outputs = {
        "words": list(parsed.words),
        "categories": list(parsed.categories),
        "types": [str(t) for t in parsed.types],
        "target": str(parsed.target),
        "links": [list(link) for link in parsed.diagram.links],
        "shape": parsed.shape.value if parsed.shape else None,
    }
    lines = [f"{w}\t{c}\t{t}" for w, c, t in zip(parsed.words, parsed.categories, parsed.types)]
    lines.append(f"reduces to {parsed.target}")
    lines.append(f"links {_links(parsed.diagram)}")
    lines.append(f"shape {outputs['shape'] or 'unsupported'}")
    return outputs, "\n".join(lines)


def cmd_term(args):
    model = _load_model(args.model)
    parsed = parse_sentence(args.sentence, _dictionary(args, model))
    text = render(compile_sentence(parsed, closure=not args.no_closure))
    return {"term": text, "shape": parsed.shape.value}, text


def cmd_truth(args):
    model = RelModel.load(args.model)
    parsed = parse_sentence(args.sentence, _dictionary(args, model))
    modes = {"oracle": args.mode in ("oracle", "both"),
             "categorical": args.mode in ("categorical", "both")}
    outputs = {"sentence": " ".join(parsed.words), "shape": parsed.shape.value}
    verdicts = {}
    if modes["oracle"]:
        try:
            outputs["oracle"] = verdicts["oracle"] = truth_bc(parsed, model)
        except OracleUnsupported:
            if args.mode == "oracle":
                raise
            outputs["oracle"] = "unsupported"
    if modes["categorical"]:
        term = compile_sentence(parsed, closure=not args.no_closure)
        outputs["rel"] = verdicts["rel"] = rel_truth(
            evaluate(term, RelBackend(model.universe), model))
        outputs["fdvect"] = boolean_sentence_value(parsed, model, closure=not args.no_closure)
        verdicts["fdvect"] = outputs["fdvect"] != 0
    text = "\n".join(f"{k}: {outputs[k]}" for k in ("oracle", "rel", "fdvect") if k in outputs)
    if len(set(verdicts.values())) > 1:
        outputs["agree"] = False
        raise Failure(outputs, text + "\nMISMATCH between evaluators")
    if args.expect is not None and next(iter(verdicts.values())) != (args.expect == "true"):
        raise Failure(outputs, text + f"\nexpected {args.expect}")
    return outputs, text


def _dist_value(args, model, sentence):
    parsed = parse_sentence(sentence, _dictionary(args, model))
    return dist_sentence_value(parsed, model, closure=not args.no_closure)


def cmd_vector(args):
    model = DistModel.load(args.model)
    v = _dist_value(args, model, args.sentence)
    weights = v.as_dict()
    text = "\n".join(f"{k}\t{w:.12g}" for k, w in weights.items()) or "(zero vector)"
    return {"sentence": args.sentence, "vector": weights}, text


def cmd_entail(args):
    model = DistModel.load(args.model)
    v, w = _dist_value(args, model, args.premise), _dist_value(args, model, args.conclusion)
    holds = pointwise_entails(v, w)
    outputs = {"premise": v.as_dict(), "conclusion": w.as_dict(), "entails": holds}
    text = f"{args.premise!r} |- {args.conclusion!r}: {holds}"
    if args.expect is not None and holds != (args.expect == "true"):
        raise Failure(outputs, text + f"\nexpected {args.expect}")
    return outputs, text


def cmd_cooccur(args):
    cfg = CooccurrenceConfig.load(args.config)
    corpus = Path(args.corpus).read_text(encoding="utf-8")
    m = build_matrix(corpus, cfg)
    present = [t for t in m.targets if m.totals[t]]
    cells = normalize(m, args.scheme, cfg, targets=present)
    if args.matrix_out:
        Path(args.matrix_out).write_text(json.dumps(m.to_dict(), indent=2) + "\n",
                                         encoding="utf-8")
    if args.out:
        model = export_singleton_model(m, args.scheme, cfg)
        Path(args.out).write_text(json.dumps(model, indent=2) + "\n", encoding="utf-8")
    table = {t: {f: cells[t, f] for f in m.features} for t in present}
    lines = ["target\tL\t" + "\t".join(m.features)]
    for t, row in table.items():
        lines.append(f"{t}\t{m.totals[t]}\t" + "\t".join(f"{x:.6g}" for x in row.values()))
    return {"scheme": args.scheme, "totals": m.totals, "table": table}, "\n".join(lines)


def cmd_cosine(args):
    if args.matrix:
        m = CooccurrenceMatrix.load(args.matrix)
        cfg = CooccurrenceConfig.load(args.config) if args.config else None
    else:
        m, cfg = dolphin_matrix(), dolphin_config()
    value = cosine(vector(m, args.first, args.scheme, cfg), vector(m, args.second, args.scheme, cfg))
    return ({"first": args.first, "second": args.second, "scheme": args.scheme, "cosine": value},
            f"cos({args.first}, {args.second}) = {value:.6f}")


def cmd_sweep(args):
    report = equiv_sweep(args.maxU, args.seed, args.verbSamples, args.exhaustive_verbs)
    outputs = report.as_dict()
    lines = [f"seed {report.seed}, maxU {report.max_u}, verbSamples {report.verb_samples}"]
    lines += [f"{shape}\t{n} checks" for shape, n in sorted(report.checks.items())]
    lines.append(f"{report.total} checks, {len(report.mismatches)} mismatches")
    text = "\n".join(lines)
    if report.mismatches:
        first = json.dumps(report.mismatches[0], sort_keys=True)
        raise Failure(outputs, text + "\ncounterexample: " + first)
    return outputs, text


def cmd_paper_example(args):
    rows = reproduce_worked_example()
    outputs = {"rows": [{"sentence": r.sentence, "dimension": r.dimension,
                         "expression": r.expression, "value": r.value} for r in rows]}
    text = format_table(rows, values_only=args.values_only)
    bad = [r for r in rows if not r.ok]
    if bad:
        raise Failure(outputs, text + "\n" + "\n".join(
            f"expected {r.expected!r}, rendered {r.expression!r}" for r in bad))
    return outputs, text


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quantal",
                                 description="Quantified sentences in pregroup grammar, "
                                             "relations and vector spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="print one JSON object")
        p.set_defaults(func=func)
        return p

    def grammar_opts(p, model_required=False, closure=True):
        p.add_argument("--grammar", help="grammar file (default: the built-in fragment)")
        p.add_argument("--model", required=model_required, help="model file")
        if closure:
            p.add_argument("--no-closure", action="store_true",
                           help="use the bare cup for NP-VP and NP-V-NP")

    p = command("parse", cmd_parse, "type a sentence and show its reduction")
    grammar_opts(p, closure=False)
    p.add_argument("sentence")

    p = command("term", cmd_term, "print the compiled morphism term")
    grammar_opts(p)
    p.add_argument("sentence")

    p = command("truth", cmd_truth, "truth in a set-theoretic model")
    grammar_opts(p, model_required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--oracle", dest="mode", action="store_const", const="oracle")
    mode.add_argument("--categorical", dest="mode", action="store_const", const="categorical")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    p.set_defaults(mode="both")
    p.add_argument("--expect", choices=("true", "false"))
    p.add_argument("sentence")

    p = command("vector", cmd_vector, "sentence vector in a distributional model")
    grammar_opts(p, model_required=True)
    p.add_argument("sentence")

    p = command("entail", cmd_entail, "pointwise entailment between two sentences")
    grammar_opts(p, model_required=True)
    p.add_argument("--expect", choices=("true", "false"))
    p.add_argument("premise")
    p.add_argument("conclusion")

    p = command("cooccur", cmd_cooccur, "count co-occurrences in a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--scheme", choices=SCHEMES, default="raw")
    p.add_argument("--out", help="write a singleton-construction model here")
    p.add_argument("--matrix-out", help="write the count matrix here")

    p = command("cosine", cmd_cosine, "cosine between two matrix rows")
    p.add_argument("--matrix", help="count matrix file (default: the dolphin table)")
    p.add_argument("--config", help="co-occurrence config, for lr/loglr")
    p.add_argument("--scheme", choices=SCHEMES, default="raw")
    p.add_argument("first")
    p.add_argument("second")

    p = command("equiv-sweep", cmd_sweep, "oracle vs Rel vs FdVect on all small models")
    p.add_argument("--maxU", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--verbSamples", type=int, default=10)
    p.add_argument("--exhaustive-verbs", action="store_true")

    p = command("paper-example", cmd_paper_example, "replay the animals worked example")
    p.add_argument("--values-only", action="store_true")
    return ap


ERRORS = (GrammarError, TermError, ModelError, OracleUnsupported, QuantifierError,
          CooccurrenceError, ValueError, OSError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    argv = sys.argv[1:] if argv is None else list(argv)
    start = time.perf_counter()
    status = 0
    try:
        outputs, text = args.func(args)
    except Failure as failed:
        outputs, text, status = failed.outputs, failed.text, 1
    except ERRORS as exc:
        outputs, text, status = {"error": f"{type(exc).__name__}: {exc}"}, None, 2
    elapsed = time.perf_counter() - start
    if args.json:
        report = {"command": ["quantal", *argv], "inputs": _digest(args), "outputs": outputs,
                  "ok": status == 0, "wallTime": round(elapsed, 6)}
        print(json.dumps(report, sort_keys=True))
    elif text is None:
        print(f"quantal: {outputs['error']}", file=sys.stderr)
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
