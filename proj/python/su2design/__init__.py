# Copyright 2026 The su2design Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Two-mode unitary designs: SU(2) optics, multiphoton statistics, design tests."""

try:
    from ._su2design import *  # noqa: F401,F403
    from ._su2design import __version__  # noqa: F401
except ImportError:
    # In-tree builds place the extension next to the build directory rather
    # than inside the package.
    from _su2design import *  # noqa: F401,F403
    from _su2design import __version__  # noqa: F401
