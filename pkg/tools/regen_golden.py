"""Rewrite tests/golden/*.svg from the current code. Review the diff before committing."""
from pathlib import Path

from hilbert_coverage.figures import reference_figures

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, text in reference_figures().items():
        (GOLDEN / f"{name}.svg").write_text(text)
        print(f"wrote {name}.svg")


if __name__ == "__main__":
    main()
