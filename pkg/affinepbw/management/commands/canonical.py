# affinepbw/management/commands/canonical.py
from ._base import EngineCommand


class Command(EngineCommand):
    help = "Compute the canonical basis of every weight space up to the cutoff."
    command = "canonical"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--order", action="append", help="order whose Lusztig data label the basis")
