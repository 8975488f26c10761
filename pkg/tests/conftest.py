"""
Shared pytest options
--natural-images DIR points the acceptance tests at a folder of 512x512 PGM images
"""

from pathlib import Path

import pytest


def pytest_addoption(parser):
    parser.addoption("--natural-images", action="store", default=None,
                     help="directory of 512x512 8-bit natural PGM images")


@pytest.fixture(scope="session")
def natural_images(request):
    directory = request.config.getoption("--natural-images")
    if not directory:
        pytest.skip("no --natural-images directory given")
    paths = sorted(Path(directory).glob("*.pgm"))
    if len(paths) < 3:
        pytest.skip(f"need at least 3 PGM images in {directory}, found {len(paths)}")
    return paths
