"""
Exceptions raised by the geometry kernel, the formation algorithm and the
scenario loader.
"""


class ConicForgeError(Exception):
    pass


class InvalidInput(ConicForgeError, ValueError):
    """Input violates an operation's precondition."""


class DegenerateInput(ConicForgeError, ValueError):
    """Points do not determine the requested curve (coincident, collinear, ...)."""


class OutOfRange(ConicForgeError, ValueError):
    """Arc length outside an open pattern span."""


class IdenticalConics(ConicForgeError, ValueError):
    pass


class SymmetricConfiguration(ConicForgeError):
    """A total order was requested for a configuration with symmetry."""


class TooFewRobots(InvalidInput):
    """Fewer than 2f+1 robots for f >= 2."""


class UnsupportedSymmetry(ConicForgeError):
    pass


class Unidentifiable(ConicForgeError):
    """No uniform grid explains the configuration, so faulty robots are unknown."""


class NoValidGrid(ConicForgeError):
    pass


class ScenarioError(InvalidInput):
    """
    A scenario violates a model assumption.

    ``assumption`` names the violated rule so the CLI can report it.
    """

    def __init__(self, assumption, detail):
        self.assumption = assumption
        self.detail = detail
        super().__init__("%s: %s" % (assumption, detail))


class ModeError(InvalidInput):
    """A generator mode that cannot be built for the requested f or n."""


class SamplingExhausted(ConicForgeError):
    pass
