import os
import tempfile
import unittest

from symcensus.config import Config, ConfigError, JOBS_ENV, load_config

class ConfigTest(unittest.TestCase):
    def test_defaults(self):
        config = Config()
        self.assertEqual(config.primes, [3, 5, 7, 11])
        self.assertEqual(config.census_syms, [2, 3, 8])
        self.assertEqual(config.jobs, 1)
        self.assertEqual(config.format, "csv")

    def test_lines(self):
        config = Config()
        config.from_lines([
            "# ranges",
            "primes = 3, 5",
            "",
            "max_sym=4   # inline",
            "census_primes = 13",
            "format = json",
        ])
        self.assertEqual(config.primes, [3, 5])
        self.assertEqual(config.max_sym, 4)
        self.assertEqual(config.census_primes, [13])
        self.assertEqual(config.format, "json")
        self.assertEqual(config.max_eta_conductor, 2)

    def test_values_verbatim(self):
        config = Config()
        config.from_lines(["label = a\\x20b=c"])
        self.assertEqual(config.raw["label"], "a\\x20b=c")

    def test_unknown_kept(self):
        config = Config()
        config.from_lines(["colour = blue"])
        self.assertEqual(config.raw, {"colour": "blue"})

    def test_malformed(self):
        with self.assertRaises(ConfigError):
            Config().from_lines(["primes"])
        with self.assertRaises(ConfigError):
            Config().from_lines(["max_i = two"])
        with self.assertRaises(ConfigError):
            Config().from_lines(["jobs = 0"])
        with self.assertRaises(ConfigError):
            Config().from_lines(["format = xml"])

class LoadConfigTest(unittest.TestCase):
    def test_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "symcensus.conf")
            with open(path, "w") as config_file:
                config_file.write("weights = 4, 12\njobs = 2\n")
            config = load_config(path, {})
        self.assertEqual(config.weights, [4, 12])
        self.assertEqual(config.jobs, 2)

    def test_env(self):
        config = load_config(None, {JOBS_ENV: "8"})
        self.assertEqual(config.jobs, 8)
        with self.assertRaises(ConfigError):
            load_config(None, {JOBS_ENV: "0"})

    def test_missing(self):
        with self.assertRaises(ConfigError):
            load_config("/nonexistent/symcensus.conf", {})
