"""Exception hierarchy shared by every module."""


class LatticeMovesError(Exception):
    """Base class for all errors raised by latmoves."""


class InvalidInput(LatticeMovesError, ValueError):
    pass


class NotFullDimensional(LatticeMovesError, ValueError):
    pass


class NotAVertex(LatticeMovesError, ValueError):
    pass


class IllegalMove(LatticeMovesError, ValueError):
    pass


class OutOfBox(LatticeMovesError, ValueError):
    pass


class Unsupported(LatticeMovesError, ValueError):
    pass


class NotASimplex(LatticeMovesError, ValueError):
    pass


class NotInConvexPosition(LatticeMovesError, ValueError):
    pass


class NotAPentagon(LatticeMovesError, ValueError):
    pass


class NotFlat(LatticeMovesError, ValueError):
    pass


class NotStronglyFlat(LatticeMovesError, ValueError):
    pass


class TooLarge(LatticeMovesError, ValueError):
    pass


class UnknownNode(LatticeMovesError, KeyError):
    def __str__(self):
        # KeyError would repr() the message
        return f"not a node of the graph: {self.args[0]}" if self.args else "unknown node"


class ParseError(LatticeMovesError, ValueError):
    pass
