# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Commands behind the tacslab CLI."""

from .compare import CompareCommands
from .export import ExportCommands
from .plot import PlotCommands
from .run import RunCommands
from .verify import VerifyCommands

__all__ = (
    "CompareCommands",
    "ExportCommands",
    "PlotCommands",
    "RunCommands",
    "VerifyCommands",
)
