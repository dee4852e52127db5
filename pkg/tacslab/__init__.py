# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Learned context selection for pairwise classifiers, at desk scale."""


__version__ = "0.3.0"

__all__ = ("__version__",)
