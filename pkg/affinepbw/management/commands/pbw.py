# affinepbw/management/commands/pbw.py
from ._base import EngineCommand


class Command(EngineCommand):
    help = "Dump PBW monomials L(c, order) in normal form."
    command = "pbw"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--order", action="append", help="order spec; the first one is used")
        parser.add_argument("--element", help="a single Lusztig datum literal instead of every datum up to the cutoff")
