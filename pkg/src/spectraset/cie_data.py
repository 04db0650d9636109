"""Embedded CIE reference tables.

Raw 5nm tables covering the working wavelength range 385-700nm:

- CIE 1931 2-degree standard observer color matching functions
  (CIE 15:2004 Table T.2).
- Standard illuminant D65 relative spectral power (CIE 15:2004 Table T.1,
  normalized to 100 at 560nm).
- Standard illuminant F2 relative spectral power (CIE 15:2004 Table T.7).

The tables are transcribed verbatim from the published 5nm data; finer
grids are produced by linear interpolation in :mod:`spectraset.colorimetry`.
"""

from __future__ import annotations

import numpy as np

# Working wavelength range endpoints, nm.
LAMBDA_MIN = 385.0
LAMBDA_MAX = 700.0

TABLE_STEP_NM = 5.0

WAVELENGTHS_5NM = np.arange(385.0, 701.0, TABLE_STEP_NM)

# CIE 1931 2-degree observer, columns x_bar, y_bar, z_bar.
CMF_5NM = np.array([
    [0.002236, 0.000064, 0.010550],  # 385
    [0.004243, 0.000120, 0.020050],  # 390
    [0.007650, 0.000217, 0.036210],  # 395
    [0.014310, 0.000396, 0.067850],  # 400
    [0.023190, 0.000640, 0.110200],  # 405
    [0.043510, 0.001210, 0.207400],  # 410
    [0.077630, 0.002180, 0.371300],  # 415
    [0.134380, 0.004000, 0.645600],  # 420
    [0.214770, 0.007300, 1.039050],  # 425
    [0.283900, 0.011600, 1.385600],  # 430
    [0.328500, 0.016840, 1.622960],  # 435
    [0.348280, 0.023000, 1.747060],  # 440
    [0.348060, 0.029800, 1.782600],  # 445
    [0.336200, 0.038000, 1.772110],  # 450
    [0.318700, 0.048000, 1.744100],  # 455
    [0.290800, 0.060000, 1.669200],  # 460
    [0.251100, 0.073900, 1.528100],  # 465
    [0.195360, 0.090980, 1.287640],  # 470
    [0.142100, 0.112600, 1.041900],  # 475
    [0.095640, 0.139020, 0.812950],  # 480
    [0.058010, 0.169300, 0.616200],  # 485
    [0.032010, 0.208020, 0.465180],  # 490
    [0.014700, 0.258600, 0.353300],  # 495
    [0.004900, 0.323000, 0.272000],  # 500
    [0.002400, 0.407300, 0.212300],  # 505
    [0.009300, 0.503000, 0.158200],  # 510
    [0.029100, 0.608200, 0.111700],  # 515
    [0.063270, 0.710000, 0.078250],  # 520
    [0.109600, 0.793200, 0.057250],  # 525
    [0.165500, 0.862000, 0.042160],  # 530
    [0.225750, 0.914850, 0.029840],  # 535
    [0.290400, 0.954000, 0.020300],  # 540
    [0.359700, 0.980300, 0.013400],  # 545
    [0.433450, 0.994950, 0.008750],  # 550
    [0.512050, 1.000000, 0.005750],  # 555
    [0.594500, 0.995000, 0.003900],  # 560
    [0.678400, 0.978600, 0.002750],  # 565
    [0.762100, 0.952000, 0.002100],  # 570
    [0.842500, 0.915400, 0.001800],  # 575
    [0.916300, 0.870000, 0.001650],  # 580
    [0.978600, 0.816300, 0.001400],  # 585
    [1.026300, 0.757000, 0.001100],  # 590
    [1.056700, 0.694900, 0.001000],  # 595
    [1.062200, 0.631000, 0.000800],  # 600
    [1.045600, 0.566800, 0.000600],  # 605
    [1.002600, 0.503000, 0.000340],  # 610
    [0.938400, 0.441200, 0.000240],  # 615
    [0.854450, 0.381000, 0.000190],  # 620
    [0.751400, 0.321000, 0.000100],  # 625
    [0.642400, 0.265000, 0.000050],  # 630
    [0.541900, 0.217000, 0.000030],  # 635
    [0.447900, 0.175000, 0.000020],  # 640
    [0.360800, 0.138200, 0.000010],  # 645
    [0.283500, 0.107000, 0.000000],  # 650
    [0.218700, 0.081600, 0.000000],  # 655
    [0.164900, 0.061000, 0.000000],  # 660
    [0.121200, 0.044580, 0.000000],  # 665
    [0.087400, 0.032000, 0.000000],  # 670
    [0.063600, 0.023200, 0.000000],  # 675
    [0.046770, 0.017000, 0.000000],  # 680
    [0.032900, 0.011920, 0.000000],  # 685
    [0.022700, 0.008210, 0.000000],  # 690
    [0.015840, 0.005723, 0.000000],  # 695
    [0.011359, 0.004102, 0.000000],  # 700
])

# Illuminant D65, relative spectral power.
D65_5NM = np.array([
    52.3118,   # 385
    54.6482,   # 390
    68.7015,   # 395
    82.7549,   # 400
    87.1204,   # 405
    91.4860,   # 410
    92.4589,   # 415
    93.4318,   # 420
    90.0570,   # 425
    86.6823,   # 430
    95.7736,   # 435
    104.8650,  # 440
    110.9360,  # 445
    117.0080,  # 450
    117.4100,  # 455
    117.8120,  # 460
    116.3360,  # 465
    114.8610,  # 470
    115.3920,  # 475
    115.9230,  # 480
    112.3670,  # 485
    108.8110,  # 490
    109.0820,  # 495
    109.3540,  # 500
    108.5780,  # 505
    107.8020,  # 510
    106.2960,  # 515
    104.7900,  # 520
    106.2390,  # 525
    107.6890,  # 530
    106.0470,  # 535
    104.4050,  # 540
    104.2250,  # 545
    104.0460,  # 550
    102.0230,  # 555
    100.0000,  # 560
    98.1671,   # 565
    96.3342,   # 570
    96.0611,   # 575
    95.7880,   # 580
    92.2368,   # 585
    88.6856,   # 590
    89.3459,   # 595
    90.0062,   # 600
    89.8026,   # 605
    89.5991,   # 610
    88.6489,   # 615
    87.6987,   # 620
    85.4936,   # 625
    83.2886,   # 630
    83.4939,   # 635
    83.6992,   # 640
    81.8630,   # 645
    80.0268,   # 650
    80.1207,   # 655
    80.2146,   # 660
    81.2462,   # 665
    82.2778,   # 670
    80.2810,   # 675
    78.2842,   # 680
    74.0027,   # 685
    69.7213,   # 690
    70.6652,   # 695
    71.6091,   # 700
])

# Illuminant F2 (cool white fluorescent), relative spectral power.
F2_5NM = np.array([
    1.48,   # 385
    1.84,   # 390
    2.15,   # 395
    3.44,   # 400
    15.69,  # 405
    3.85,   # 410
    3.74,   # 415
    4.19,   # 420
    4.62,   # 425
    5.06,   # 430
    34.98,  # 435
    11.81,  # 440
    6.27,   # 445
    6.63,   # 450
    6.93,   # 455
    7.19,   # 460
    7.40,   # 465
    7.54,   # 470
    7.62,   # 475
    7.65,   # 480
    7.62,   # 485
    7.62,   # 490
    7.45,   # 495
    7.28,   # 500
    7.15,   # 505
    7.05,   # 510
    7.04,   # 515
    7.16,   # 520
    7.47,   # 525
    8.04,   # 530
    8.88,   # 535
    10.01,  # 540
    24.88,  # 545
    16.64,  # 550
    14.59,  # 555
    16.16,  # 560
    17.56,  # 565
    18.62,  # 570
    21.47,  # 575
    22.79,  # 580
    19.29,  # 585
    18.66,  # 590
    17.73,  # 595
    16.54,  # 600
    15.21,  # 605
    13.80,  # 610
    12.36,  # 615
    10.95,  # 620
    9.65,   # 625
    8.40,   # 630
    7.32,   # 635
    6.31,   # 640
    5.43,   # 645
    4.68,   # 650
    4.02,   # 655
    3.45,   # 660
    2.96,   # 665
    2.55,   # 670
    2.19,   # 675
    1.89,   # 680
    1.64,   # 685
    1.53,   # 690
    1.27,   # 695
    1.10,   # 700
])

for _table in (CMF_5NM, D65_5NM, F2_5NM):
    _table.setflags(write=False)
WAVELENGTHS_5NM.setflags(write=False)
