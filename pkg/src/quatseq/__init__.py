"""Perfect periodic autocorrelation sequences and arrays over the unit
quaternions: exact arithmetic, constructions, search, and verification."""

from .quat import (FLOAT_TOL, FloatQuat, I, J, K, LipschitzQuat, MINUS_ONE,
                   ONE, UNITS, UnitQuat, axis_power_sum, embed, unit_conj,
                   unit_mul, unit_pow)
from .seqs import FloatQuatSequence, QuatArray, QuatSequence
from .correlation import (AUTO_FFT_THRESHOLD, BudgetExceededError,
                          CorrelationSpectrum, DEFAULT_NAIVE_BUDGET,
                          FftRoundingError, FloatSpectrum, ShiftArityError,
                          array_autocorr, fft_autocorr_all, float_autocorr,
                          float_spectrum, full_spectrum, is_perfect,
                          left_autocorr, right_autocorr, spectrum_records,
                          spectrum_text_lines, zcz)
from .constructions import (TemplateSpec, construct_2d, construct_4d_iii,
                            construct_4d_iv, construct_aop_array,
                            construct_seq_2n, coprime_product,
                            extract_template, flatten_row_major,
                            pointwise_product, template_sequence)
from .search import (AopFlags, PolynomialIndexSpec, SearchHit, SearchReport,
                     aop_check, aop_random_search, evaluate_index_spec,
                     exhaustive_search, expand_by_automorphisms,
                     reference_enumerate, sequence_orbit, template_search)
from .catalog import (CatalogEntry, ParseError, get_entry, load_catalog,
                      parse_array, parse_entry, parse_float_sequence,
                      parse_sequence, serialize_array, serialize_entry,
                      serialize_float_sequence, serialize_sequence,
                      verify_catalog)

__version__ = "0.1.0"
