class QwalkError(Exception):
    exit_code = 1
    kind = "error"


class ConfigError(QwalkError, ValueError):
    """Invalid parameters, graph specs or CLI configuration."""

    exit_code = 2
    kind = "config_error"


class ContractViolation(QwalkError, ArithmeticError):
    """A numerical precondition or postcondition did not hold."""

    exit_code = 3
    kind = "numerical_contract_violation"
