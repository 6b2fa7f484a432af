"""Punto de entrada principal de la herramienta de línea de comandos"""

import sys
from pathlib import Path

# BASE_DIR: raíz del repositorio
BASE_DIR = Path(__file__).resolve().parent
if str(BASE_DIR) not in sys.path:
    sys.path.append(str(BASE_DIR))

from app.api.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
