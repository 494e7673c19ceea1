# affinepbw/tasks.py
from __future__ import annotations

import logging

from celery import chord, group, shared_task
from django.utils import timezone

from .api.serializers import ReportSerializer
from .cartan import build_type
from .models import VerificationRun
from .parsing import parse_order
from .verification import VerificationReport, VerificationSuite

logger = logging.getLogger(__name__)


# --- Helpers ------------------------------------------------------------------
def _suite(type_tag: str, cutoff: int, order_specs, seed: int = 0, polytopes: bool = True,
           sample_length: int = 0) -> VerificationSuite:
    typ = build_type(type_tag)
    orders = [parse_order(spec, typ, seed) for spec in order_specs or ()]
    return VerificationSuite(typ, cutoff, orders=orders or None, polytopes=polytopes,
                             sample_length=sample_length or None)


def _finish(run: VerificationRun, report: VerificationReport) -> VerificationRun:
    run.report = ReportSerializer(report).data
    run.violation_count = len(report.violations)
    run.status = "passed" if report.passed else "failed"
    run.finished_at = timezone.now()
    run.save(update_fields=["report", "violation_count", "status", "finished_at"])
    return run


def _fail(run: VerificationRun, exc: Exception) -> None:
    run.status = "failed"
    run.last_error = repr(exc)
    run.finished_at = timezone.now()
    run.save(update_fields=["status", "last_error", "finished_at"])
    logger.exception("verification run %s crashed", run.id)


def _summary(run: VerificationRun, **extra) -> dict:
    return {"run_id": run.id, "status": run.status, "violations": run.violation_count, **extra}


# --- Tasks --------------------------------------------------------------------
@shared_task
def verify_weight_task(type_tag: str, cutoff: int, order_specs, weight, seed: int = 0,
                       polytopes: bool = True, sample_length: int = 0) -> dict:
    """Run the suite on one weight space and return the report as a dict."""
    suite = _suite(type_tag, cutoff, order_specs, seed, polytopes, sample_length)
    return suite.check_weight(tuple(weight)).to_dict()


@shared_task
def merge_verification_task(parts, run_id: int, global_part: dict) -> dict:
    """Chord callback: fold the per-weight reports into the run."""
    run = VerificationRun.objects.get(id=run_id)
    try:
        report = VerificationReport.from_dict(global_part)
        for part in parts:
            report.merge(VerificationReport.from_dict(part))
    except Exception as exc:
        _fail(run, exc)
        raise
    _finish(run, report)
    logger.info("verification run %s %s with %d violations", run_id, run.status, run.violation_count)
    return _summary(run)


@shared_task
def run_verification_task(run_id: int, polytopes: bool = True, sample_length: int = 0) -> dict:
    """Verify every weight space of a run.

    With several jobs the weight spaces go out as a chord and
    merge_verification_task completes the run; the returned summary then
    carries the id of the merge result.
    """
    run = VerificationRun.objects.get(id=run_id)
    run.status = "running"
    run.started_at = timezone.now()
    run.save(update_fields=["status", "started_at"])
    try:
        suite = _suite(run.type_tag, run.cutoff, run.order_specs, run.seed, polytopes, sample_length)
        report = suite.check_global()
        weights = suite.weights()
        args = (run.type_tag, run.cutoff, run.order_specs)
        if run.jobs > 1 and weights:
            header = group(
                verify_weight_task.s(*args, list(w), run.seed, polytopes, sample_length) for w in weights
            )
            result = chord(header)(merge_verification_task.s(run_id, report.to_dict()))
            run.refresh_from_db()
            return _summary(run, merge_id=result.id)
        for w in weights:
            report.merge(VerificationReport.from_dict(
                verify_weight_task(*args, list(w), run.seed, polytopes, sample_length)
            ))
    except Exception as exc:
        _fail(run, exc)
        raise
    _finish(run, report)
    logger.info("verification run %s %s with %d violations", run_id, run.status, run.violation_count)
    return _summary(run)
