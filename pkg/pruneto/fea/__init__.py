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

from pruneto.fea.elements import element_stiffness, element_dofs, cell_nodes
from pruneto.fea.solver import (
    Material,
    BoundaryConditions,
    FeaResult,
    assemble_stiffness,
    solve_elasticity,
    compliance_of,
    max_displacement,
    nodes_of,
    cells_of_nodes,
    lump,
)

__all__ = [
    "element_stiffness",
    "element_dofs",
    "cell_nodes",
    "Material",
    "BoundaryConditions",
    "FeaResult",
    "assemble_stiffness",
    "solve_elasticity",
    "compliance_of",
    "max_displacement",
    "nodes_of",
    "cells_of_nodes",
    "lump",
]
