import argparse
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, TextIO

from config.settings import Settings
from models.errors import ArgumentError
from services.goodCoordinateService import GoodCoordinateService
from services.liftingService import LiftingService
from services.torsorService import TorsorService
from services.tropicalizationService import TropicalizationService
from services.validationService import ValidationService
from utils.logger import app_logger
from utils.validators import validate_rational
from views.reportView import FORMAT_JSON, FORMAT_TEXT, ReportView


EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_INPUT = 2


class CliController:
    """Controlador de la línea de comandos: lee argumentos, llama al servicio y escribe el resultado"""

    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.handlers: Dict[str, Callable[[argparse.Namespace], Dict]] = {
            "validate": self.handle_validate,
            "lift": self.handle_lift,
            "tropicalize": self.handle_tropicalize,
            "roundtrip": self.handle_roundtrip,
            "good-coord": self.handle_good_coord,
            "torsor-check": self.handle_torsor_check,
            "refine": self.handle_refine
        }

    @staticmethod
    def _common_options(scoped: bool) -> argparse.ArgumentParser:
        """Opciones comunes; en un subcomando solo se fijan si aparecen, sin pisar las globales"""
        def default(value):
            return argparse.SUPPRESS if scoped else value

        options = argparse.ArgumentParser(add_help=False)
        options.add_argument("--precision", default=default(None), help="Precisión relativa de trabajo (racional)")
        options.add_argument("--window", type=int, default=default(None),
                             help="Índice máximo de los desarrollos en anillos")
        options.add_argument("--format", choices=[FORMAT_JSON, FORMAT_TEXT], default=default(FORMAT_JSON))
        options.add_argument("--seed", type=int, default=default(0), help="Semilla de las pruebas aleatorias")
        return options

    def build_parser(self) -> argparse.ArgumentParser:
        """Parser con un subcomando por operación y las opciones comunes antes o después del subcomando"""
        common = self._common_options(scoped=True)
        parser = argparse.ArgumentParser(prog=Settings.APP_NAME.lower(), description="Reducción tropical de formas",
                                         parents=[self._common_options(scoped=False)])
        commands = parser.add_subparsers(dest="command", required=True)

        validate = commands.add_parser("validate", parents=[common], help="Valida un dato de reducción")
        validate.add_argument("datum")
        validate.add_argument("--grc", help="Nivel de corte de la condición global de residuos")

        lift = commands.add_parser("lift", parents=[common], help="Levanta un dato a un modelo pegado")
        lift.add_argument("datum")
        lift.add_argument("-o", "--output")

        tropicalize = commands.add_parser("tropicalize", parents=[common], help="Tropicaliza un modelo pegado")
        tropicalize.add_argument("model")
        tropicalize.add_argument("-o", "--output")

        roundtrip = commands.add_parser("roundtrip", parents=[common], help="Levanta y tropicaliza de nuevo")
        roundtrip.add_argument("datum")

        good = commands.add_parser("good-coord", parents=[common], help="Coordenada buena de una forma")
        good.add_argument("form")

        torsor = commands.add_parser("torsor-check", parents=[common], help="Leyes del torsor G_n")
        torsor.add_argument("--l", type=int, required=True, dest="l")
        torsor.add_argument("--trials", type=int, default=100)
        torsor.add_argument("--truncation", type=int)

        refine = commands.add_parser("refine", parents=[common], help="Subdivide una arista del dato")
        refine.add_argument("datum")
        refine.add_argument("--edge", required=True)
        refine.add_argument("--at", required=True, help="Distancia desde la cola (racional)")
        refine.add_argument("-o", "--output")
        return parser

    # Argumentos
    @staticmethod
    def parse_rational(value: Optional[str], name: str) -> Optional[Fraction]:
        if value is None:
            return None
        is_valid, error_message = validate_rational(value)
        if not is_valid:
            raise ArgumentError(f"{name}: {error_message}")
        return Fraction(value.strip().replace(" ", ""))

    # Subcomandos
    def handle_validate(self, args: argparse.Namespace) -> Dict:
        return ValidationService.validate_file(args.datum, self.parse_rational(args.grc, "--grc"))

    def handle_lift(self, args: argparse.Namespace) -> Dict:
        precision = self.parse_rational(args.precision, "--precision")
        return LiftingService.lift_file(args.datum, args.output, precision, args.window)

    def handle_tropicalize(self, args: argparse.Namespace) -> Dict:
        precision = self.parse_rational(args.precision, "--precision")
        return TropicalizationService.tropicalize_file(args.model, args.output, precision)

    def handle_roundtrip(self, args: argparse.Namespace) -> Dict:
        precision = self.parse_rational(args.precision, "--precision")
        return LiftingService.roundtrip_file(args.datum, precision, args.window)

    def handle_good_coord(self, args: argparse.Namespace) -> Dict:
        return GoodCoordinateService.good_coordinate_file(args.form, self.parse_rational(args.precision, "--precision"))

    def handle_torsor_check(self, args: argparse.Namespace) -> Dict:
        return TorsorService.torsor_check(args.l, args.trials, args.seed, args.truncation)

    def handle_refine(self, args: argparse.Namespace) -> Dict:
        return ValidationService.refine_file(args.datum, args.edge, self.parse_rational(args.at, "--at"), args.output)

    def run(self, argv: List[str]) -> int:
        """
        Ejecuta un subcomando

        Args:
            argv (List[str]): Argumentos sin el nombre del programa

        Returns:
            int: 0 éxito, 1 fallo semántico, 2 entrada inválida, 3 error interno
        """
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_OK if e.code == 0 else EXIT_INPUT

        try:
            result = self.handlers[args.command](args)
        except ArgumentError as e:
            self.stderr.write(f"{e}\n")
            return EXIT_INPUT

        exit_code = result.get("exit_code", EXIT_OK if result["success"] else EXIT_SEMANTIC)
        if exit_code in (EXIT_OK, EXIT_SEMANTIC) and ("report" in result or "document" in result):
            self.stdout.write(ReportView.render(result, args.format))
        else:
            self.stderr.write(f"{result['message']}\n")
        app_logger.debug(f"Subcomando {args.command} terminado con código {exit_code}")
        return exit_code
