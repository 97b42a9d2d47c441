"""Stage the in-tree package next to the freshly built extension module.

When PHOTONMAB_EXT_DIR is set (the ctest integration), assemble a throwaway
package directory from python/photonmab plus the built _core extension so the
tests import the same layout a wheel would install. Without it, fall back to
an installed photonmab package.
"""

import os
import shutil
import sys
import tempfile
from pathlib import Path


def pytest_configure(config):
    ext_dir = os.environ.get("PHOTONMAB_EXT_DIR")
    if not ext_dir:
        return
    root = Path(__file__).resolve().parents[2]
    staging = Path(tempfile.mkdtemp(prefix="photonmab_pkg_"))
    pkg = staging / "photonmab"
    pkg.mkdir()
    shutil.copy(root / "python" / "photonmab" / "__init__.py", pkg / "__init__.py")
    for ext in Path(ext_dir).glob("_core*.so"):
        shutil.copy(ext, pkg / ext.name)
    sys.path.insert(0, str(staging))
