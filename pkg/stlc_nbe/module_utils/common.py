# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import annotations

_MISSING = object()


def navigate_hash(source, path, default=None):
    """Return values along a JSON object tree.

    Args:
        source: dict, the decoded JSON object to query.
        path: list, the list of keys to follow in the object tree.
        default: obj, the value returned when a key is absent or a node along
            the path is not an object. Defaults to None.

    Returns:
        obj, the found value along the navigated tree.
    """
    node = source
    for key in path:
        if not isinstance(node, dict):
            return default
        node = node.get(key, _MISSING)
        if node is _MISSING:
            return default
    return node


def single_key(source):
    """Return the only key of a tagged JSON object.

    Args:
        source: obj, the decoded JSON value.

    Returns:
        str, the tag, or None when source is not a one-key object.
    """
    if isinstance(source, dict) and len(source) == 1:
        return next(iter(source))
    return None
