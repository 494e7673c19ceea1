# affinepbw/management/commands/transition.py
from ._base import EngineCommand


class Command(EngineCommand):
    help = "Write the crystal bijection between the Lusztig data of two orders as CSV."
    command = "transition"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--from", dest="from", help="source order spec (default bn:0)")
        parser.add_argument("--to", dest="to", help="target order spec (default bn:1)")
