"""
CLI Package
Command-line surface: compress, decompress, metrics, sweep
"""
