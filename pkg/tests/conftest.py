import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.VERDICTS):
        terminalreporter.write_line(mod.VERDICTS[n])
