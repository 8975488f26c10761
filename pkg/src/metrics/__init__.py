"""
Metrics Package
MSE, PSNR, SSIM, energy ratio and the appreciation zones
"""
