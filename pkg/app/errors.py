from typing import Optional


class AerprovError(Exception):
    """Base error; exit_code is what the command line returns for it."""

    exit_code = 1


class ConfigError(AerprovError):
    exit_code = 2

    def __init__(self, message: str, key_path: Optional[str] = None):
        self.key_path = key_path
        if key_path:
            message = f"{key_path}: {message}"
        super().__init__(message)


class InfeasibleError(AerprovError):
    exit_code = 3


class OutputError(AerprovError):
    exit_code = 4


class UnknownPresetError(ConfigError):
    pass
