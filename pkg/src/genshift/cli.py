"""Command line front end: JSON files in, deterministic JSON out.

Exit codes are stable: 0 ok, 2 parse error, 3 integrity error, 4 image not
square-summable, 5 witness precondition failure, 6 oracle disagreement.
Every float in the output is rendered with 17 significant digits so that
reruns diff exactly; infinities are rendered as the string "infinite".
"""

from __future__ import annotations

import json
import math
import os
import sys

import click
import numpy as np

from . import compact_witness, dense_oracle, domain_analysis, gen_shift, index_domain, sparse_vec
from .errors import IntegrityError, ParseError, SearchExhaustedError, UnsupportedError
from .index_domain import (
    Certified,
    CertifiedUnbounded,
    FiberCard,
    IndexMap,
    WindowBound,
    WindowOnly,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INTEGRITY = 3
EXIT_NOT_IN_L2 = 4
EXIT_WITNESS = 5
EXIT_DISAGREEMENT = 6

SEED_ENV_VAR = "GENSHIFT_SEED"


# ---------------------------------------------------------------------------
# JSON rendering with fixed float formatting

def _render(doc) -> str:
    if doc is None:
        return "null"
    if doc is True:
        return "true"
    if doc is False:
        return "false"
    if isinstance(doc, str):
        return json.dumps(doc)
    if isinstance(doc, int):
        return str(doc)
    if isinstance(doc, float):
        if math.isinf(doc):
            return '"infinite"'
        return format(doc, ".17g")
    if isinstance(doc, dict):
        body = ",".join(f"{json.dumps(str(k))}:{_render(v)}" for k, v in doc.items())
        return "{" + body + "}"
    if isinstance(doc, (list, tuple)):
        return "[" + ",".join(_render(v) for v in doc) + "]"
    raise TypeError(f"cannot render {type(doc).__name__}")


def _card_doc(c: FiberCard):
    return "infinite" if c.is_infinite else c.count


def _verdict_doc(v):
    if isinstance(v, bool):
        return v
    return {"window_only": v.note}


def _norm_doc(v):
    if isinstance(v, WindowOnly):
        return {"window_only": v.note, "lower_bound": v.value}
    return float(v)


def _bound_verdict_doc(v):
    if isinstance(v, Certified):
        return {"kind": "certified", "bound": v.bound}
    if isinstance(v, CertifiedUnbounded):
        return {"kind": "certified_unbounded"}
    assert isinstance(v, WindowBound)
    return {"kind": "window_only", "bound": v.bound, "window": v.window}


def _fiber_report_doc(rep: index_domain.FiberReport) -> dict:
    return {
        "cardinalities": {str(a): _card_doc(rep.cardinalities[a]) for a in sorted(rep.cardinalities)},
        "sup": _card_doc(rep.sup),
        "verdict": _bound_verdict_doc(rep.verdict),
        "m_set": sorted(rep.m_set),
    }


def _classification_doc(rep: gen_shift.ClassificationReport) -> dict:
    return {
        "maps_into_l2": _verdict_doc(rep.maps_into_l2),
        "operator_norm": _norm_doc(rep.operator_norm),
        "sigma_injective": _verdict_doc(rep.sigma_injective),
        "sigma_surjective": _verdict_doc(rep.sigma_surjective),
        "isometry": _verdict_doc(rep.isometry),
        "compact": rep.compact,
    }


def _domain_doc(rep: domain_analysis.DomainReport) -> dict:
    m = rep.m
    return {
        "m_set": {
            "members": sorted(m.members),
            "window": m.window,
            "certified_infinite_fibers": None if m.infinite_fibers is None else sorted(m.infinite_fibers),
        },
        "closed": _verdict_doc(rep.closed),
        "uniform_bound_on_m": _card_doc(rep.uniform_bound_on_m),
        "characterization_holds": _verdict_doc(rep.characterization_holds),
        "unbounded_witness": None if rep.unbounded_witness is None else [list(r) for r in rep.unbounded_witness],
    }


# ---------------------------------------------------------------------------
# file loading

def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _load_map(path: str) -> IndexMap:
    return index_domain.parse_map(_load_json(path))


def _fail(code: int, message: str):
    click.echo(message, err=True)
    sys.exit(code)


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from None
    return dense_oracle.DEFAULT_POWER_CONFIG.seed


# ---------------------------------------------------------------------------
# commands

@click.group()
def main():
    """Analyse shift operators induced by index self-maps, over JSON files."""


@main.command()
@click.argument("map_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--window", type=click.IntRange(min=1), default=index_domain.DEFAULT_WINDOW,
              show_default=True, help="scan window for symbolic maps")
def analyze(map_file, window):
    """Fiber report, operator classification and domain analysis for a map."""
    try:
        m = _load_map(map_file)
        fibers = index_domain.fiber_report(m, window)
        classification = gen_shift.classify(m, window, window)
        domain = domain_analysis.domain_report(m, window)
    except ParseError as exc:
        _fail(EXIT_PARSE, f"parse error: {exc}")
    except IntegrityError as exc:
        _fail(EXIT_INTEGRITY, f"integrity error: {exc}")
    doc = {
        "schema_version": SCHEMA_VERSION,
        "map": index_domain.map_to_json(m),
        "window": window,
        "fiber_report": _fiber_report_doc(fibers),
        "classification": _classification_doc(classification),
        "domain": _domain_doc(domain),
    }
    click.echo(_render(doc))


@main.command("apply")
@click.argument("map_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("vector_file", type=click.Path(exists=True, dir_okay=False))
def apply_cmd(map_file, vector_file):
    """Apply the shift to a vector; prints the image in the vector file format."""
    try:
        m = _load_map(map_file)
        x = sparse_vec.parse_vector(_load_json(vector_file), m.domain)
    except ParseError as exc:
        _fail(EXIT_PARSE, f"parse error: {exc}")
    except IntegrityError as exc:
        _fail(EXIT_INTEGRITY, f"integrity error: {exc}")
    y = gen_shift.apply(m, x)
    if isinstance(y, gen_shift.NotInL2):
        _fail(
            EXIT_NOT_IN_L2,
            f"image not square-summable: support index {y.index} has an infinite fiber",
        )
    click.echo(_render(sparse_vec.vector_to_json(y)))


@main.command()
@click.argument("map_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", type=click.Choice(["compact", "divergence"]), required=True)
@click.option("--count", type=click.IntRange(min=2), default=3, show_default=True,
              help="number of vectors for the compact witness")
@click.option("--K", "truncation", type=click.IntRange(min=1), default=16, show_default=True,
              help="truncation length for the divergence witness")
@click.option("--window", type=click.IntRange(min=1), default=index_domain.DEFAULT_WINDOW,
              show_default=True)
def witness(map_file, kind, count, truncation, window):
    """Non-compactness or norm-divergence certificate for a map."""
    try:
        m = _load_map(map_file)
    except ParseError as exc:
        _fail(EXIT_PARSE, f"parse error: {exc}")
    try:
        if kind == "compact":
            w = compact_witness.witness_sequence(m, count, window=window)
            doc = {
                "schema_version": SCHEMA_VERSION,
                "kind": "compact",
                "map": index_domain.map_to_json(m),
                "indices": list(w.indices),
                "fiber_sizes": list(w.fiber_sizes),
                "min_distance_sq": {
                    "num": w.min_distance_sq.numerator,
                    "den": w.min_distance_sq.denominator,
                },
                "pairwise_separation": w.pairwise_separation,
                "vectors": [sparse_vec.vector_to_json(v) for v in w.vectors],
            }
        else:
            w = domain_analysis.divergence_witness(m, truncation)
            doc = {
                "schema_version": SCHEMA_VERSION,
                "kind": "divergence",
                "map": index_domain.map_to_json(m),
                "K": truncation,
                "records": [list(r) for r in w.records],
                "vector_norm_sq": sparse_vec.norm_sq(w.vector),
                "image_norm_sq_lower_bound": w.image_norm_sq_lower_bound,
                "vector": sparse_vec.vector_to_json(w.vector),
            }
    except (UnsupportedError, SearchExhaustedError, ValueError) as exc:
        _fail(EXIT_WITNESS, f"witness precondition failed: {exc}")
    click.echo(_render(doc))


@main.command("oracle-check")
@click.option("--n", "n", type=click.IntRange(min=2), required=True)
@click.option("--exhaustive", "exhaustive", is_flag=True, help="sweep all n^n image tables")
@click.option("--random", "random_count", type=click.IntRange(min=1), default=None,
              help="check this many random image tables instead")
@click.option("--seed", type=int, default=None,
              help=f"RNG seed; falls back to ${SEED_ENV_VAR}, then the built-in default")
def oracle_check(n, exhaustive, random_count, seed):
    """Agreement sweep between the fiber analysis and the dense oracle."""
    if exhaustive == (random_count is not None):
        raise click.UsageError("pass exactly one of --exhaustive or --random R")
    try:
        seed = _resolve_seed(seed)
    except ParseError as exc:
        _fail(EXIT_PARSE, f"parse error: {exc}")
    config = dense_oracle.PowerIterationConfig(seed=seed)
    rng = np.random.default_rng(seed)
    if exhaustive:
        if n > dense_oracle.EXHAUSTIVE_CAP:
            raise click.UsageError(f"--exhaustive needs n <= {dense_oracle.EXHAUSTIVE_CAP}")
        maps = dense_oracle.exhaustive_maps(n)
        mode = "exhaustive"
    else:
        domain = index_domain.IndexSet.finite(n)
        maps = (IndexMap(domain, table=t) for t in dense_oracle.random_tables(n, random_count, rng))
        mode = "random"
    checked = 0
    max_err = 0.0
    bad = []
    for m in maps:
        res = dense_oracle.check_map_agreement(m, config=config, rng=rng)
        checked += 1
        max_err = max(max_err, res.norm_error)
        if not res.ok:
            bad.append(res)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "mode": mode,
        "seed": seed,
        "maps_checked": checked,
        "disagreements": len(bad),
        "max_norm_error": max_err,
    }
    click.echo(_render(doc))
    if bad:
        for res in bad[:20]:
            click.echo(f"disagreement on image table {list(res.table)}", err=True)
        sys.exit(EXIT_DISAGREEMENT)


if __name__ == "__main__":
    main()
