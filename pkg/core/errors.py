"""
Exception hierarchy for the power-operations engine
"""


class PowerOpsError(Exception):
    """Base class for every error raised by the engine"""


class InputError(PowerOpsError, ValueError):
    """Invalid user input (bad expression, window, prime or domain)"""


class ParseError(InputError):
    """Syntax or letter error in an operation expression"""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} (at position {position})")
        self.reason = message
        self.text = text
        self.position = position

    def caret(self):
        """Render the offending text with a caret under the error position"""
        return f"{self.text}\n{' ' * self.position}^"


class InvalidWindowError(InputError):
    """Malformed enumeration window or incompatible pair of windows"""


class PrimeMismatchError(InputError):
    """Operands live at different primes or on different sides"""


class DomainError(InputError):
    """Operation called outside the inputs it is defined for"""


class StepBudgetExceeded(PowerOpsError):
    """Adem rewriting ran past its configured step budget"""

    def __init__(self, budget, steps):
        super().__init__(f"Adem rewriting exceeded its step budget ({steps} > {budget})")
        self.budget = budget
        self.steps = steps


class FalsifiedHypothesisError(PowerOpsError):
    """A brute-force check found a counterexample to a property that must hold"""
