# affinepbw/management/commands/polytope.py
from ._base import EngineCommand


class Command(EngineCommand):
    help = "Build decorated PBW polytopes as JSON, optionally with an SVG projection."
    command = "polytope"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--order", action="append", help="order the --element datum is written in (default bn:0)")
        parser.add_argument("--element", help="Lusztig datum literal of one crystal element")
        parser.add_argument("--svg", help="render the polytope projection to this SVG path")
        parser.add_argument("--sample-length", dest="sample_length", type=int,
                            help="longest Weyl word sampled (default 2 * height of the weight)")
