"""
Image I/O Package
Binary PGM/PPM files and pixel <-> matrix conversion
"""
