# affinepbw/management/commands/verify.py
from ._base import EngineCommand


class Command(EngineCommand):
    help = "Run the verification suite; exits nonzero when any instance is violated."
    command = "verify"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--order", action="append", help="order spec to verify against (repeatable)")
        parser.add_argument("--jobs", type=int, help="split weight spaces over this many Celery jobs")
        parser.add_argument("--sample-length", dest="sample_length", type=int)
        parser.add_argument("--skip-polytopes", dest="skip_polytopes", action="store_true",
                            help="only run the crystal, (C)/(S)/(I) and lemma checks")
