"""Service modules for witness files and the law suite"""
