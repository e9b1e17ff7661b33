"""
Base settings for the entropic stress engine.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Nothing is signed: the engine has no sessions, tokens or cookies.
SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "entropic-stress-engine-not-secret")

DEBUG = os.environ.get("DJANGO_DEBUG", "True").lower() == "true"

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
    # Third party
    "rest_framework",
    # Local
    "core",
]

# No database: test sets are read from CSV files and never persisted.
DATABASES = {}


# Internationalization
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True


# REST Framework settings (serializers and the JSON renderer only)
REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "DEFAULT_PARSER_CLASSES": [
        "rest_framework.parsers.JSONParser",
    ],
    "STRICT_JSON": True,
    "UNICODE_JSON": True,
    "COERCE_DECIMAL_TO_STRING": False,
}


# Engine settings
ENGINE = {
    "TOL_ABS": float(os.environ.get("ENGINE_TOL_ABS", "1e-10")),
    "TOL_REL": float(os.environ.get("ENGINE_TOL_REL", "1e-9")),
    "MAX_ITER": int(os.environ.get("ENGINE_MAX_ITER", "100")),
    "DEFAULT_ALPHA": float(os.environ.get("ENGINE_DEFAULT_ALPHA", "0.05")),
    "DEFAULT_TAU_COUNT": int(os.environ.get("ENGINE_DEFAULT_TAU_COUNT", "21")),
    "THREADS": int(os.environ.get("ENGINE_THREADS", "1")),
    "RATES_MODE": os.environ.get("ENGINE_RATES_MODE", "standard"),
}
