import os
from typing import Dict, Iterable, List, Mapping, Optional

from .emit import formats

JOBS_ENV = "SYMCENSUS_JOBS"

class ConfigError(Exception):
    pass

def _int(key: str, value: str, minimum: int = 1) -> int:
    try:
        number = int(value)
    except ValueError:
        raise ConfigError(f"{key} expects an integer, got {value!r}")
    if number < minimum:
        raise ConfigError(f"{key} must be at least {minimum}, got {number}")
    return number

def _int_list(key: str, value: str) -> List[int]:
    return [_int(key, item.strip()) for item in value.split(",")
        if item.strip()]

class Config(object):
    raw: Dict[str, str]

    primes:            List[int] = [3, 5, 7, 11]
    max_eta_conductor: int       = 2
    max_sym:           int       = 8

    weights:       List[int] = [12]
    census_syms:   List[int] = [2, 3, 8]
    census_primes: List[int] = [13, 31, 61, 97]
    max_i:         int       = 1

    jobs:   int = 1
    format: str = "csv"

    def __init__(self):
        self.raw = {}

    def __repr__(self) -> str:
        return f"Config(jobs={self.jobs}, format={self.format!r})"

    def from_lines(self, lines: Iterable[str]):
        for number, line in enumerate(lines, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"line {number}: expected key = value")
            key   = key.strip()
            value = value.strip()
            self.raw[key] = value

            if   key == "primes":
                self.primes = _int_list(key, value)
            elif key == "max_eta_conductor":
                self.max_eta_conductor = _int(key, value)
            elif key == "max_sym":
                self.max_sym = _int(key, value)

            elif key == "weights":
                self.weights = _int_list(key, value)
            elif key == "census_syms":
                self.census_syms = _int_list(key, value)
            elif key == "census_primes":
                self.census_primes = _int_list(key, value)
            elif key == "max_i":
                self.max_i = _int(key, value)

            elif key == "jobs":
                self.jobs = _int(key, value)
            elif key == "format":
                if not value in formats():
                    raise ConfigError(f"format expects one of "
                        f"{', '.join(formats())}, got {value!r}")
                self.format = value

    def from_env(self, environ: Mapping[str, str]):
        if JOBS_ENV in environ:
            self.jobs = _int(JOBS_ENV, environ[JOBS_ENV])

def load_config(
        path:    Optional[str] = None,
        environ: Optional[Mapping[str, str]] = None) -> Config:
    config = Config()
    if path is not None:
        try:
            with open(path, "r") as config_file:
                config.from_lines(config_file.read().splitlines())
        except OSError as e:
            raise ConfigError(f"cannot read {path}: {e}")
    config.from_env(os.environ if environ is None else environ)
    return config
