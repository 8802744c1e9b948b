# coding: utf-8

# Copyright 2024 The pruneto developers, all rights reserved.
#
# This file is part of pruneto.
#
# pruneto is free software: you can redistribute it and/or modify it under
# the terms of the GNU General Public License as published by the Free
# Software Foundation, either version 3.0 of the License, or any later version.
#
# pruneto is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License along
# with pruneto. If not, see <https://www.gnu.org/licenses/>.

from typing import List, Optional


class DimensionError(ValueError):
    """Exception raised when two fields do not live on the same grid"""

    pass


class DegenerateInputError(ValueError):
    """Exception raised when an input carries no usable information"""

    pass


class InfeasibleTargetError(ValueError):
    """Exception raised when a volume target cannot be reached"""

    pass


class SolverError(RuntimeError):
    """Exception raised when the elasticity system cannot be solved"""

    pass


class ConfigError(ValueError):
    """Exception raised when a scenario file is invalid

    The individual problems are kept in `messages`.
    """

    def __init__(self, messages: List[str], path: Optional[str] = None):
        self.messages = list(messages)
        self.path = path
        prefix = f"{path}: " if path else ""
        super().__init__(prefix + "; ".join(self.messages))
