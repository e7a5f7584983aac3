"""
工具模块：日志与报告输出
"""
