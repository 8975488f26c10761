"""
Codec Package
SVDC container, rank selection, encoding and decoding
"""
