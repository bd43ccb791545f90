# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Normalization by evaluation for the simply typed lambda calculus with booleans."""

__version__ = '1.0.0'
