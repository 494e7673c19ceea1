# affinepbw/management/commands/_base.py
import json

from django.core.management.base import BaseCommand, CommandError

from ...config import RunConfig
from ...exceptions import EngineError
from ...runner import run


class EngineCommand(BaseCommand):
    """Shared flags and error handling; subclasses set ``command`` and add their own flags."""

    command = ""

    def add_arguments(self, parser):
        parser.add_argument("--type", help="affine type tag: A1~1, A2~1 or A2~2")
        parser.add_argument("--cutoff", type=int, help="height cutoff for weights")
        parser.add_argument("--seed", type=int, help="seed for chain extensions")
        parser.add_argument("--out", help="write the result to this file instead of stdout")

    def handle(self, *args, **options):
        try:
            config = RunConfig.from_options(self.command, options)
            status = run(config, self.stdout)
        except EngineError as exc:
            raise CommandError(json.dumps(exc.as_dict(), sort_keys=True)) from exc
        if status:
            raise CommandError(json.dumps({"error": "VerificationFailed", "detail": f"{self.command} reported violations"}))
