"""
Linear Algebra Package
Dense matrices and the Jacobi SVD behind the codec
"""
