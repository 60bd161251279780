# -*- coding: utf-8 -*-
"""
Table Handler Module - Ghi/đọc bảng CSV và file Excel kết quả
"""

import os
import csv
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from openpyxl import Workbook, load_workbook
from openpyxl.styles import Font, Alignment, PatternFill, Border, Side

from config.settings import (
    COEFFICIENT_CSV_COLUMNS, FREQUENCY_CSV_COLUMNS, GRID_CSV_COLUMNS,
    OUTPUT_DIR, REPORT_COLUMNS
)
from core.bspline import GridFunction
from core.fundamental import CoeffTable
from core.quaternion import AxialElement
from core.thread_pool import WorkerResult

logger = logging.getLogger(__name__)


def _format(value: float) -> str:
    """Định dạng float ngắn nhất đọc lại được chính xác"""
    return repr(float(value))


def _ensure_parent(filepath: str):
    os.makedirs(os.path.dirname(filepath) if os.path.dirname(filepath) else ".", exist_ok=True)


class TableHandler:
    """Xuất bảng lưới, tần số, hệ số ra CSV và Excel"""

    def __init__(self, output_dir: str = None):
        """
        Khởi tạo handler

        Args:
            output_dir: Thư mục ghi file
        """
        self.output_dir = output_dir or OUTPUT_DIR
        self.workbook: Optional[Workbook] = None
        self.sheet = None

    def path(self, filename: str) -> str:
        return os.path.join(self.output_dir, filename)

    # ------------------------------------------------------------------ #
    # CSV
    # ------------------------------------------------------------------ #
    def _write_csv(self, filepath: str, header: Sequence[str], rows) -> str:
        _ensure_parent(filepath)
        with open(filepath, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
        logger.info(f"Đã ghi file: {filepath}")
        return filepath

    def _read_csv(self, filepath: str, header: Sequence[str]) -> np.ndarray:
        with open(filepath, "r", newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            found = next(reader)
            if found != list(header):
                raise ValueError(f"Header không khớp trong {filepath}: {found}")
            return np.array([[float(cell) for cell in row] for row in reader], dtype=float)

    def write_grid_csv(self, grid: GridFunction, filepath: str) -> str:
        """
        Ghi lưới giá trị quaternion thực: t,scalar,e1,e2,e3

        Args:
            grid: GridFunction (phần thực của các thành phần được ghi)
            filepath: Đường dẫn file

        Returns:
            Đường dẫn file đã ghi
        """
        columns = [grid.x] + [np.real(c) for c in grid.values.components()]
        rows = ([_format(col[i]) for col in columns] for i in range(grid.n))
        return self._write_csv(filepath, GRID_CSV_COLUMNS, rows)

    def read_grid_csv(self, filepath: str) -> Tuple[np.ndarray, np.ndarray]:
        """Đọc lại lưới: (t, mảng n×4 các thành phần)"""
        data = self._read_csv(filepath, GRID_CSV_COLUMNS)
        return data[:, 0], data[:, 1:]

    def write_frequency_csv(self, frequency: np.ndarray, values: AxialElement, filepath: str) -> str:
        """Ghi dữ liệu phức theo tọa độ trục: xi,s_re,s_im,u_re,u_im"""
        return self._write_axial_csv(np.asarray(frequency, dtype=float), values, filepath, FREQUENCY_CSV_COLUMNS)

    def read_frequency_csv(self, filepath: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Đọc lại: (xi, s, u)"""
        data = self._read_csv(filepath, FREQUENCY_CSV_COLUMNS)
        return data[:, 0], data[:, 1] + 1j * data[:, 2], data[:, 3] + 1j * data[:, 4]

    def write_coefficients_csv(self, table: CoeffTable, filepath: str) -> str:
        return self._write_axial_csv(table.k, table.c, filepath, COEFFICIENT_CSV_COLUMNS)

    def _write_axial_csv(self, positions: np.ndarray, values: AxialElement, filepath: str,
                         header: Sequence[str]) -> str:
        s = np.asarray(values.s)
        u = np.asarray(values.u)
        rows = (
            [str(positions[i]) if np.issubdtype(positions.dtype, np.integer) else _format(positions[i]),
             _format(s[i].real), _format(s[i].imag), _format(u[i].real), _format(u[i].imag)]
            for i in range(len(positions))
        )
        return self._write_csv(filepath, header, rows)

    # ------------------------------------------------------------------ #
    # Excel
    # ------------------------------------------------------------------ #
    def _create_sheet(self, title: str, headers: Sequence[str], widths: Dict[str, int]):
        """Tạo workbook với header có style"""
        wb = Workbook()
        ws = wb.active
        ws.title = title

        # Style cho header
        header_font = Font(bold=True, color="FFFFFF")
        header_fill = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
        header_alignment = Alignment(horizontal="center", vertical="center")
        thin_border = Border(
            left=Side(style='thin'),
            right=Side(style='thin'),
            top=Side(style='thin'),
            bottom=Side(style='thin')
        )

        for col, header in enumerate(headers, 1):
            cell = ws.cell(row=1, column=col, value=header)
            cell.font = header_font
            cell.fill = header_fill
            cell.alignment = header_alignment
            cell.border = thin_border

        for col, width in widths.items():
            ws.column_dimensions[col].width = width

        self.workbook = wb
        self.sheet = ws
        return wb, ws, thin_border

    def write_coefficients_xlsx(self, table: CoeffTable, filepath: str) -> str:
        """
        Ghi bảng hệ số c_{N,M,k} ra Excel, kèm sheet thông số và cận sai số

        Returns:
            Đường dẫn file đã ghi
        """
        wb, ws, border = self._create_sheet(
            "Coefficients", COEFFICIENT_CSV_COLUMNS, {"A": 10, "B": 24, "C": 24, "D": 24, "E": 24}
        )
        s = np.asarray(table.c.s)
        u = np.asarray(table.c.u)
        for row, k in enumerate(table.k, 2):
            values = [int(k), s[row - 2].real, s[row - 2].imag, u[row - 2].real, u[row - 2].imag]
            for col, value in enumerate(values, 1):
                ws.cell(row=row, column=col, value=float(value) if col > 1 else value).border = border

        info = wb.create_sheet("Parameters")
        parameters = [
            ("order", str(table.order)),
            ("N", table.n),
            ("M", table.truncation),
            ("error_bound", table.error_bound),
            ("epstein_term", table.epstein_term),
            ("truncation_term", table.truncation_term),
        ]
        for row, (key, value) in enumerate(parameters, 1):
            info.cell(row=row, column=1, value=key).font = Font(bold=True)
            info.cell(row=row, column=2, value=value)
        info.column_dimensions["A"].width = 18
        info.column_dimensions["B"].width = 40

        return self.save(filepath)

    def write_report_xlsx(self, results: List[WorkerResult], filepath: str) -> str:
        """Ghi báo cáo kiểm tra: Check, Value, Tolerance, Status, Message, Elapsed"""
        wb, ws, border = self._create_sheet(
            "Verify", REPORT_COLUMNS, {"A": 36, "B": 18, "C": 14, "D": 10, "E": 60, "F": 10}
        )
        status_fill = {
            True: PatternFill(start_color="C6EFCE", end_color="C6EFCE", fill_type="solid"),
            False: PatternFill(start_color="FFC7CE", end_color="FFC7CE", fill_type="solid"),
        }
        for row, result in enumerate(results, 2):
            values = [
                result.name,
                result.value,
                result.tolerance,
                "PASS" if result.success else "FAIL",
                result.message,
                round(result.elapsed, 3),
            ]
            for col, value in enumerate(values, 1):
                cell = ws.cell(row=row, column=col, value=value)
                cell.border = border
            ws.cell(row=row, column=4).fill = status_fill[result.success]
        return self.save(filepath)

    def load(self, filepath: str) -> bool:
        """
        Load file Excel

        Returns:
            True nếu load thành công
        """
        if not os.path.exists(filepath):
            logger.warning(f"File không tồn tại: {filepath}")
            return False

        try:
            self.workbook = load_workbook(filepath)
            self.sheet = self.workbook.active
            logger.info(f"Đã load file: {filepath}")
            return True
        except Exception as e:
            logger.error(f"Lỗi load file Excel: {e}")
            return False

    def get_rows(self) -> List[Dict[str, Any]]:
        """Các dòng của sheet đang mở dưới dạng dict theo header"""
        if not self.sheet:
            logger.error("Chưa load file Excel")
            return []
        rows = list(self.sheet.iter_rows(values_only=True))
        if not rows:
            return []
        header = [str(cell) for cell in rows[0]]
        return [dict(zip(header, row)) for row in rows[1:] if any(cell is not None for cell in row)]

    def save(self, filepath: str) -> str:
        """Lưu file Excel"""
        if not self.workbook:
            raise ValueError("Chưa có workbook để lưu")
        _ensure_parent(filepath)
        self.workbook.save(filepath)
        logger.info(f"Đã lưu file: {filepath}")
        return filepath

    def close(self):
        """Đóng workbook"""
        if self.workbook:
            self.workbook.close()
            self.workbook = None
            self.sheet = None
