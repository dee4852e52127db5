# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Command line interface."""

from .cli import tacslab

__all__ = ("tacslab",)
