"""
PT 对称 Dirac 哈密顿量数值工具 - 主入口文件
提供命令行方式运行各子命令的能力，等价于安装后的 ptdirac 命令
"""
import os
import sys

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from ptdirac.cli import main

if __name__ == '__main__':
    sys.exit(main())
