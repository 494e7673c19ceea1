# affinepbw/management/commands/order.py
from ._base import EngineCommand


class Command(EngineCommand):
    help = "Dump beta_k for |k| up to the cutoff and the coarse type of each order."
    command = "order"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--order", action="append", help="order spec (repeatable), e.g. bn:0 or word:|01..10|")
