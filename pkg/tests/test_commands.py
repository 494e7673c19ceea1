# tests/test_commands.py
import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from affinepbw.api.serializers import VerificationRunSerializer
from affinepbw.models import VerificationRun
from affinepbw.tasks import merge_verification_task, run_verification_task, verify_weight_task
from affinepbw.verification import VerificationReport


def run_command(name, *args, **options):
    out = StringIO()
    call_command(name, *args, stdout=out, **options)
    return out.getvalue()


class TestReadOnlyCommands:
    """Test suite for the commands that only print engine output."""

    def test_roots_lists_real_roots_and_delta(self):
        payload = json.loads(run_command("roots", "--type=A1~1", "--cutoff=2"))
        assert payload["type"] == "A1~1"
        assert payload["delta"] == [1, 1]
        assert payload["roots"] == [
            {"imaginary": False, "root": [0, 1]},
            {"imaginary": False, "root": [1, 0]},
            {"imaginary": True, "root": [1, 1]},
        ]

    def test_roots_can_write_to_a_file(self, tmp_path):
        target = tmp_path / "roots.json"
        assert run_command("roots", "--cutoff=1", f"--out={target}") == ""
        assert json.loads(target.read_text())["cutoff"] == 1

    def test_relative_out_lands_in_the_output_dir(self, tmp_path):
        assert run_command("roots", "--cutoff=1", "--out=nested/roots.json") == ""
        assert json.loads((tmp_path / "nested" / "roots.json").read_text())["cutoff"] == 1

    def test_transition_csv(self):
        text = run_command("transition", "--cutoff=1", "--from=bn:0", "--to=bn:1")
        lines = text.strip().splitlines()
        assert lines[0] == "wt,c_in,order_in,c_out,order_out"
        assert len(lines) == 3
        assert all("bn:0" in line and "bn:1" in line for line in lines[1:])

    def test_polytope_of_one_element(self, tmp_path):
        svg = tmp_path / "segment.svg"
        payload = json.loads(run_command("polytope", "--element={beta=[0,1]:1}", f"--svg={svg}"))
        (polytope,) = payload["polytopes"]
        assert polytope["vertices"] == [[0, 0], [0, 1]]
        assert svg.exists()

    def test_unsupported_type_is_reported_as_json(self):
        with pytest.raises(CommandError) as excinfo:
            run_command("roots", "--type=B2~1")
        assert json.loads(str(excinfo.value))["error"] == "ParseError"

    def test_bad_order_spec_fails_before_any_work(self):
        with pytest.raises(CommandError) as excinfo:
            run_command("transition", "--to=zzz")
        assert json.loads(str(excinfo.value))["error"] == "ParseError"


@pytest.mark.django_db
class TestVerifyCommand:
    """Test suite for verification runs and their stored reports."""

    def test_verify_records_a_passing_run(self):
        payload = json.loads(run_command("verify", "--cutoff=1"))
        assert payload["status"] == "passed"
        assert payload["report"]["passed"] is True
        run = VerificationRun.objects.get()
        assert run.status == "passed"
        assert run.violation_count == 0
        assert VerificationRunSerializer(run).data["duration"] is not None

    def test_task_runs_directly(self):
        run = VerificationRun.objects.create(type_tag="A1~1", cutoff=1)
        result = run_verification_task(run.id, polytopes=False)
        assert result == {"run_id": run.id, "status": "passed", "violations": 0}
        run.refresh_from_db()
        assert run.report["type"] == "A1~1"
        assert run.started_at <= run.finished_at

    def test_jobs_fan_out_through_a_chord(self):
        run = VerificationRun.objects.create(type_tag="A1~1", cutoff=2, jobs=2)
        summary = run_verification_task(run.id, polytopes=False)
        assert summary["status"] == "passed"
        assert "merge_id" in summary
        run.refresh_from_db()
        assert run.status == "passed"
        assert run.report["checked"]["convex"] > 0
        assert run.report["checked"]["C"] > 0

    def test_fanned_out_report_matches_the_serial_one(self):
        serial = VerificationRun.objects.create(type_tag="A1~1", cutoff=2, jobs=1)
        fanned = VerificationRun.objects.create(type_tag="A1~1", cutoff=2, jobs=2)
        run_verification_task(serial.id, polytopes=False)
        run_verification_task(fanned.id, polytopes=False)
        serial.refresh_from_db()
        fanned.refresh_from_db()
        assert fanned.report["checked"] == serial.report["checked"]

    def test_verify_command_with_jobs(self):
        payload = json.loads(run_command("verify", "--cutoff=1", "--jobs=2"))
        assert payload["status"] == "passed"
        assert VerificationRun.objects.get().jobs == 2

    def test_merge_task_folds_parts_into_the_run(self):
        run = VerificationRun.objects.create(type_tag="A1~1", cutoff=1)
        head = VerificationReport("A1~1", 1)
        head.record("convex", True)
        part = VerificationReport("A1~1", 1)
        part.record("C", False, "bad exponent", node=1)
        result = merge_verification_task([part.to_dict()], run.id, head.to_dict())
        assert result == {"run_id": run.id, "status": "failed", "violations": 1}
        run.refresh_from_db()
        assert run.report["checked"] == {"convex": 1, "C": 1}


def test_weight_task_returns_a_report_dict():
    part = verify_weight_task("A1~1", 1, [], [0, 1], polytopes=False)
    assert part["passed"] is True
    assert part["checked"]["C"] > 0
