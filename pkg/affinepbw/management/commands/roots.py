# affinepbw/management/commands/roots.py
from ._base import EngineCommand


class Command(EngineCommand):
    help = "List the positive roots (real roots and delta multiples) up to the height cutoff."
    command = "roots"
