import os
from pathlib import Path
from dotenv import load_dotenv, find_dotenv

load_dotenv(find_dotenv(".env", usecwd=True))


BASE_DIR = Path(__file__).resolve().parent.parent.parent
DEBUG = os.getenv("DEBUG", "false").lower() == "true"

APPLICATION_NAME = os.getenv("ZENOCOUPLER_APPLICATION_NAME", "zenocoupler")
APPLICATION_VERSION = os.getenv("ZENOCOUPLER_APPLICATION_VERSION", "0.1.0")

INSTALLED_APPS = [
    "apps.coupler",
    "apps.coefficients",
    "apps.observables",
    "apps.zeno",
    "apps.oracle",
    "apps.sweeps",
]

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()
LOG_FILE = os.getenv("LOG_FILE", str(BASE_DIR / "logs" / "zenocoupler.log"))

CLASSIFICATION_RELATIVE_TOLERANCE = 1e-9

ORACLE = {
    "MAX_DIMENSION": 200_000,
    "LEAKAGE_TOLERANCE": 1e-4,
    "STEP_RTOL": 1e-10,
    "MAX_STEP": 0.05,
}

GENERATOR_CACHE_SIZE = 32

SWEEP_ORACLE_BUDGET = 1_000
SWEEP_DEFAULT_THREADS = int(os.getenv("SWEEP_DEFAULT_THREADS", "8"))
