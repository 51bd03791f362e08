import sys
from typing import List, Optional

# Importar configuraciones
from config.settings import Settings
from utils.logger import LoggerSetup, app_logger

# Importar controlador de la línea de comandos
from controllers.cliController import CliController


EXIT_INTERNAL = 3


class TropicalApp:
    """Clase principal de la aplicación"""

    def __init__(self):
        """Inicializa la aplicación"""
        self.cli_controller = None

    def setup(self) -> bool:
        """Configura la aplicación antes de iniciar"""
        try:
            # Configurar logging
            LoggerSetup.setup()
            app_logger.info("=" * 60)
            app_logger.info(f"Iniciando {Settings.APP_NAME} v{Settings.APP_VERSION}")
            app_logger.info(f"Entorno: {Settings.ENVIRONMENT}")
            app_logger.info("=" * 60)

            Settings.ensure_directories()
            self.cli_controller = CliController()
            return True

        except Exception as e:
            print(f"ERROR CRÍTICO: {str(e)}", file=sys.stderr)
            return False

    def run(self, argv: Optional[List[str]] = None) -> int:
        """
        Ejecuta la aplicación

        Args:
            argv (Optional[List[str]]): Argumentos; por defecto los del proceso

        Returns:
            int: Código de salida
        """
        if not self.setup():
            return EXIT_INTERNAL

        try:
            exit_code = self.cli_controller.run(sys.argv[1:] if argv is None else argv)
            app_logger.info(f"Aplicación cerrada con código: {exit_code}")
            return exit_code

        except Exception as e:
            app_logger.critical(f"Error durante la ejecución: {str(e)}")
            print(f"ERROR CRÍTICO: {str(e)}", file=sys.stderr)
            return EXIT_INTERNAL


def main():
    """Función principal"""
    app = TropicalApp()
    sys.exit(app.run())


if __name__ == "__main__":
    main()
