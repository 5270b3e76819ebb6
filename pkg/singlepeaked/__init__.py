"""Main module for singlepeaked.

Single-peaked, single-plateaued and existentially single-peaked consistency
of weak-order preference profiles, decided through the consecutive ones
property and a PQ-tree.
"""

__version__ = "1.0.0"
