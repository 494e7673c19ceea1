# affinepbw/runner.py
"""
run(config): the single entry point behind every management command.

Each handler computes its payload, writes it to ``config.out`` (or the given
stream) and returns the exit status.
"""

from __future__ import annotations

import io
import logging

from celery.result import AsyncResult

from .api.serializers import (
    CanonicalVectorSerializer,
    OrderTableSerializer,
    PBWMonomialSerializer,
    PolytopeSerializer,
    render_json,
    write_transition_csv,
)
from .basis_lab import canonical_basis_weight, transition_table
from .cartan import roots_up_to_height
from .config import RunConfig
from .crystal import Crystal
from .models import VerificationRun
from .parsing import parse_datum
from .pbw import pbw_basis, pbw_monomial
from .polytope import build_pbw_polytope, render_svg
from .tasks import run_verification_task

logger = logging.getLogger(__name__)


def _emit(config: RunConfig, stream, payload: bytes | str) -> None:
    if isinstance(payload, str):
        payload = payload.encode()
    if config.out:
        config.out.parent.mkdir(parents=True, exist_ok=True)
        config.out.write_bytes(payload)
        logger.info("wrote %s (%d bytes)", config.out, len(payload))
    else:
        stream.write(payload.decode())


def _weights(config: RunConfig) -> list:
    return Crystal(config.typ).weights_up_to(config.cutoff)


# --- Handlers ---

def run_roots(config: RunConfig, stream) -> int:
    typ = config.typ
    roots = roots_up_to_height(typ, config.cutoff)
    payload = {
        "type": typ.tag,
        "cutoff": config.cutoff,
        "delta": list(typ.delta),
        "roots": [{"root": list(beta), "imaginary": typ.delta_multiple(beta) is not None}
                  for beta in sorted(roots, key=lambda b: (sum(b), b))],
    }
    _emit(config, stream, render_json(payload))
    return 0


def run_order(config: RunConfig, stream) -> int:
    tables = [OrderTableSerializer((order, config.cutoff)).data for order in config.resolve_orders()]
    _emit(config, stream, render_json({"type": config.type_tag, "orders": tables}))
    return 0


def run_pbw(config: RunConfig, stream) -> int:
    typ = config.typ
    order = config.order()
    context = {"typ": typ}
    if config.element:
        datum = parse_datum(config.element, typ)
        items = [(datum, pbw_monomial(datum, order))]
    else:
        items = [item for weight in _weights(config) for item in pbw_basis(order, weight)]
    monomials = [PBWMonomialSerializer(item, context=context).data for item in items]
    _emit(config, stream, render_json({"type": typ.tag, "order": order.label, "monomials": monomials}))
    return 0


def run_canonical(config: RunConfig, stream) -> int:
    typ = config.typ
    order = config.order()
    context = {"typ": typ}
    weights = []
    for weight in _weights(config):
        vectors = sorted(canonical_basis_weight(weight, order), key=lambda v: v.datum)
        weights.append({
            "weight": list(weight),
            "vectors": [CanonicalVectorSerializer(v, context=context).data for v in vectors],
        })
    _emit(config, stream, render_json({"type": typ.tag, "order": order.label, "weights": weights}))
    return 0


def run_transition(config: RunConfig, stream) -> int:
    source, target = config.source_order(), config.target_order()
    rows = []
    for weight in _weights(config):
        for c_in, c_out in sorted(transition_table(source, target, weight)):
            rows.append((weight, c_in, c_out))
    buffer = io.StringIO()
    write_transition_csv(buffer, rows, source, target)
    _emit(config, stream, buffer.getvalue())
    return 0


def run_polytope(config: RunConfig, stream) -> int:
    typ = config.typ
    crystal = Crystal(typ)
    if config.element:
        elements = [crystal.from_datum(parse_datum(config.element, typ), config.order())]
    else:
        elements = crystal.elements_up_to(config.cutoff)
    polytopes = [build_pbw_polytope(crystal, b, config.sample_length or None) for b in elements]
    if config.svg:
        config.svg.parent.mkdir(parents=True, exist_ok=True)
        for k, P in enumerate(polytopes):
            path = config.svg if len(polytopes) == 1 else config.svg.with_name(f"{config.svg.stem}-{k}{config.svg.suffix}")
            render_svg(P, path)
    payload = {
        "type": typ.tag,
        "polytopes": [PolytopeSerializer(P).data for P in polytopes],
    }
    _emit(config, stream, render_json(payload))
    return 0


def run_verify(config: RunConfig, stream) -> int:
    run = VerificationRun.objects.create(
        type_tag=config.type_tag,
        cutoff=config.cutoff,
        seed=config.seed,
        order_specs=list(config.orders),
        jobs=config.jobs,
    )
    summary = run_verification_task.apply(
        args=(run.id,), kwargs={"polytopes": config.polytopes, "sample_length": config.sample_length},
        throw=True,
    ).get()
    if summary["status"] == "running" and summary.get("merge_id"):
        AsyncResult(summary["merge_id"]).get()
    run.refresh_from_db()
    _emit(config, stream, render_json({"status": run.status, "report": run.report}))
    return 0 if run.status == "passed" else 1


HANDLERS = {
    "roots": run_roots,
    "order": run_order,
    "pbw": run_pbw,
    "canonical": run_canonical,
    "transition": run_transition,
    "polytope": run_polytope,
    "verify": run_verify,
}


def run(config: RunConfig, stream) -> int:
    logger.info("running %s for %s cutoff %d", config.command, config.type_tag, config.cutoff)
    return HANDLERS[config.command](config, stream)
