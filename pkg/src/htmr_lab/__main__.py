"""Allow ``python -m htmr_lab`` as an alias for the ``htmr-lab`` script."""

from .cli import run

if __name__ == "__main__":
    run()
