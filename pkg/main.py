"""
hexval - valorações dos hexágonos generalizados de ordem 2
Arquivo principal de execução da aplicação

Uso: python main.py <comando> [opções]
     python main.py report --all --format json
"""

import sys

from ui.cli import run


def main():
    """
    Função principal: repassa os argumentos para a linha de comando
    """
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
