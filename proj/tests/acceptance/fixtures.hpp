#pragma once

// Published benchmark fixtures: twelve-month rolling results for seven
// upstream forecasters, zero-shot (ZS) and with the two-stage regressor
// (FBR), plus the printed summary tables with improvement columns. Values
// are reproduced exactly as printed (two decimals).

namespace fixtures {

struct Cell {
    double mse;
    double mae;
};

inline constexpr int kModels = 7;
inline constexpr int kWindows = 12;

inline const char* kModelNames[kModels] = {
    "TimerXL", "Sundial", "Chronos2(mv)", "Chronos2(future)", "TimesFM", "Moirai2", "TiRex"};

struct MonthlyTable {
    const char* target;
    Cell zs[kWindows][kModels];
    Cell fbr[kWindows][kModels];
    Cell avg_zs[kModels];
    Cell avg_fbr[kModels];
    Cell improve_pct[kModels];  // printed Improve row (percent)
};

inline const MonthlyTable kDayAheadMonthly = {
    "day_ahead",
    {
        {{96031.92, 195.56}, {77180.33, 163.32}, {89610.94, 175.98}, {66888.00, 159.64}, {73564.20, 160.36}, {81880.01, 166.92}, {79950.36, 161.65}},
        {{134084.19, 237.77}, {121219.58, 220.57}, {114767.00, 220.21}, {92523.61, 211.76}, {126918.32, 213.88}, {123831.87, 222.76}, {121434.01, 210.61}},
        {{93755.35, 196.24}, {80372.27, 185.39}, {78314.09, 172.93}, {66959.59, 161.66}, {97939.16, 180.96}, {90217.22, 173.04}, {95215.36, 165.77}},
        {{77669.32, 175.90}, {57050.10, 141.62}, {53054.38, 137.56}, {41129.56, 122.26}, {60371.87, 133.42}, {58169.98, 134.34}, {62035.25, 128.32}},
        {{93666.34, 180.71}, {86903.53, 172.03}, {100305.20, 185.01}, {92857.96, 192.45}, {86284.90, 162.18}, {90186.08, 166.77}, {87845.80, 153.05}},
        {{48227.93, 128.14}, {25582.65, 95.52}, {27434.78, 92.98}, {24986.22, 88.57}, {30333.88, 94.76}, {30058.37, 91.84}, {33013.53, 88.16}},
        {{47276.94, 113.89}, {34349.32, 94.85}, {35194.34, 103.91}, {24992.95, 97.87}, {37760.89, 93.24}, {41461.06, 96.68}, {45637.71, 98.15}},
        {{26194.18, 92.84}, {18446.30, 84.86}, {19041.06, 79.95}, {22911.02, 82.82}, {21042.63, 82.44}, {16232.81, 70.61}, {19955.39, 73.31}},
        {{58305.51, 124.13}, {50975.25, 115.60}, {54196.83, 128.87}, {48346.62, 120.97}, {55041.01, 122.43}, {54495.37, 118.30}, {54019.00, 113.74}},
        {{106548.72, 218.57}, {88226.08, 194.62}, {77523.35, 183.72}, {54935.98, 161.40}, {91218.39, 188.55}, {87374.95, 182.83}, {90006.81, 185.27}},
        {{33343.31, 111.37}, {27710.86, 100.95}, {27223.86, 97.97}, {22383.87, 86.41}, {27917.56, 90.34}, {25812.17, 82.76}, {26125.74, 75.93}},
        {{100243.11, 177.10}, {87738.88, 153.87}, {83058.95, 155.21}, {67451.35, 158.16}, {88694.82, 145.02}, {89289.72, 144.10}, {94168.80, 143.73}},
    },
    {
        {{28336.35, 89.36}, {21958.62, 84.95}, {18692.07, 77.39}, {20340.07, 87.74}, {20774.21, 79.08}, {19424.70, 80.66}, {20981.86, 83.95}},
        {{40757.15, 110.22}, {45136.53, 123.09}, {44370.32, 120.87}, {48430.27, 125.53}, {44246.05, 116.91}, {48259.19, 119.29}, {43017.85, 118.11}},
        {{45468.58, 109.31}, {42478.45, 111.75}, {43072.86, 109.83}, {46726.38, 110.72}, {42435.10, 110.51}, {48687.06, 115.28}, {45406.77, 115.15}},
        {{26432.77, 79.77}, {29912.20, 83.65}, {30530.24, 83.57}, {31365.62, 84.79}, {33709.88, 86.42}, {29063.96, 83.90}, {34297.45, 88.75}},
        {{32690.44, 92.38}, {37007.00, 97.54}, {37003.55, 98.47}, {36565.64, 96.68}, {35779.71, 96.44}, {31915.10, 90.78}, {36821.45, 97.27}},
        {{21909.27, 86.89}, {23753.56, 86.64}, {24089.27, 85.46}, {21861.27, 76.54}, {20864.53, 77.29}, {20510.49, 77.03}, {22181.49, 82.93}},
        {{22805.03, 85.41}, {28215.34, 90.66}, {24555.22, 87.92}, {32517.70, 96.25}, {25388.54, 86.02}, {24899.19, 86.08}, {26646.30, 88.50}},
        {{31828.17, 90.12}, {25673.99, 77.76}, {28298.30, 81.09}, {24676.54, 84.59}, {31304.71, 83.44}, {35594.87, 92.77}, {30230.98, 85.11}},
        {{32633.16, 75.44}, {39071.02, 80.19}, {38111.77, 80.32}, {31227.95, 75.61}, {40301.52, 81.39}, {37861.71, 80.32}, {41216.20, 83.26}},
        {{79067.78, 167.47}, {85247.65, 173.37}, {81003.48, 169.03}, {84240.63, 175.93}, {87127.87, 176.08}, {73088.76, 163.71}, {81226.46, 167.61}},
        {{11194.69, 55.77}, {9789.58, 48.10}, {8740.34, 49.97}, {11148.39, 52.26}, {8581.90, 47.50}, {11883.00, 54.63}, {8719.66, 48.81}},
        {{34617.97, 95.26}, {38793.17, 107.41}, {33662.70, 94.84}, {34679.67, 99.04}, {34428.32, 99.38}, {37974.19, 104.36}, {35774.00, 103.80}},
    },
    {{76278.90, 162.69}, {62979.60, 143.60}, {63310.40, 144.53}, {52197.23, 137.00}, {66423.97, 138.97}, {65750.80, 137.58}, {67450.65, 133.14}},
    {{33978.45, 94.78}, {35586.43, 97.09}, {34344.18, 94.90}, {35315.01, 97.14}, {35411.86, 95.04}, {34930.18, 95.73}, {35543.37, 96.94}},
    {{55.45, 41.74}, {43.50, 32.39}, {45.75, 34.34}, {32.34, 29.09}, {46.69, 31.61}, {46.87, 30.42}, {47.30, 27.19}},
};

inline const MonthlyTable kRealTimeMonthly = {
    "real_time",
    {
        {{118895.21, 217.91}, {97693.37, 190.56}, {114730.62, 199.96}, {99201.90, 195.49}, {98345.31, 188.98}, {114230.96, 202.83}, {114310.87, 198.35}},
        {{120379.08, 229.16}, {85619.59, 181.18}, {90050.68, 203.80}, {80630.58, 209.08}, {98546.03, 191.38}, {117523.33, 222.87}, {97648.07, 179.53}},
        {{107854.53, 206.39}, {95016.02, 202.85}, {88038.66, 191.04}, {77018.86, 187.73}, {111121.30, 196.46}, {102835.81, 195.97}, {109298.64, 178.06}},
        {{82330.52, 182.88}, {67713.56, 151.20}, {68948.49, 168.73}, {64970.55, 177.79}, {80565.65, 153.57}, {75139.75, 150.78}, {76841.29, 140.66}},
        {{102967.35, 188.26}, {89835.88, 171.51}, {106919.77, 212.81}, {108991.74, 232.27}, {113641.81, 184.17}, {97904.36, 176.92}, {95134.62, 155.97}},
        {{65641.39, 139.82}, {47375.07, 121.01}, {47714.17, 120.61}, {44323.24, 120.88}, {48809.47, 109.90}, {49823.53, 115.69}, {52145.87, 112.20}},
        {{41142.87, 108.49}, {30470.52, 89.86}, {31539.87, 99.73}, {27781.38, 106.07}, {32773.53, 87.15}, {41767.10, 95.36}, {36157.71, 87.12}},
        {{31030.77, 94.68}, {25916.09, 90.20}, {26063.24, 92.93}, {29037.41, 97.29}, {33563.30, 94.70}, {23631.02, 79.13}, {28671.56, 80.56}},
        {{85633.09, 156.08}, {78310.54, 154.30}, {79575.40, 165.89}, {76442.12, 172.88}, {79838.22, 146.30}, {86435.07, 156.92}, {83710.00, 146.00}},
        {{143685.32, 245.75}, {125149.12, 234.85}, {91568.20, 210.20}, {66799.12, 180.18}, {155995.52, 259.92}, {127427.50, 228.15}, {134176.60, 232.44}},
        {{38809.75, 120.18}, {36503.10, 114.82}, {31784.27, 107.45}, {28197.25, 102.97}, {34545.62, 99.15}, {31778.31, 96.23}, {32763.18, 87.15}},
        {{97874.73, 169.98}, {87027.78, 149.20}, {93279.61, 155.96}, {74450.43, 171.96}, {91786.17, 148.05}, {89730.76, 145.00}, {88617.30, 129.12}},
    },
    {
        {{23393.77, 100.68}, {27793.07, 107.87}, {28962.75, 108.12}, {41628.91, 127.75}, {31895.88, 114.04}, {27384.44, 106.69}, {34742.31, 121.41}},
        {{32541.10, 119.51}, {36259.24, 126.50}, {38276.06, 124.70}, {37569.89, 123.42}, {32796.34, 116.31}, {35840.88, 115.25}, {38160.78, 117.90}},
        {{65560.99, 135.07}, {67539.49, 135.37}, {63971.96, 136.43}, {69542.25, 137.31}, {64435.87, 136.05}, {65943.71, 137.51}, {68689.22, 138.64}},
        {{38817.92, 116.73}, {43164.55, 121.84}, {38725.26, 106.06}, {49110.38, 120.86}, {41578.67, 106.84}, {38528.82, 108.33}, {41703.71, 107.60}},
        {{45863.10, 118.49}, {44887.32, 117.20}, {49086.25, 116.84}, {47795.90, 121.09}, {48432.05, 119.94}, {46761.93, 122.08}, {53846.44, 123.05}},
        {{42519.09, 110.62}, {44953.33, 119.60}, {43102.85, 118.05}, {40441.20, 107.20}, {40049.48, 108.22}, {43203.69, 114.87}, {41016.73, 110.74}},
        {{25942.39, 99.99}, {32145.62, 99.94}, {22851.93, 97.04}, {23634.30, 92.29}, {25053.84, 104.78}, {21023.51, 93.36}, {26019.67, 96.04}},
        {{42816.39, 108.70}, {36533.89, 100.93}, {43829.60, 107.10}, {36597.41, 105.57}, {40358.88, 104.96}, {45826.41, 107.22}, {43251.67, 105.40}},
        {{57474.52, 109.76}, {62770.34, 110.22}, {63742.47, 113.22}, {59888.76, 114.83}, {64865.33, 110.78}, {63983.58, 113.40}, {63109.99, 113.77}},
        {{112637.92, 203.07}, {105293.65, 196.79}, {120206.91, 215.92}, {102746.86, 200.65}, {122923.08, 214.33}, {115473.27, 205.10}, {110535.59, 199.50}},
        {{16096.67, 73.50}, {16402.15, 74.61}, {16514.01, 75.48}, {17205.48, 71.43}, {16239.71, 72.56}, {16502.11, 76.04}, {15307.39, 71.51}},
        {{30602.62, 109.11}, {27243.63, 98.49}, {31096.27, 108.19}, {34042.47, 112.00}, {32710.28, 107.72}, {31379.47, 112.55}, {26954.77, 102.59}},
    },
    {{86353.72, 171.63}, {72219.22, 154.30}, {72517.75, 160.76}, {64820.38, 162.88}, {81627.66, 154.98}, {79852.29, 155.49}, {79122.98, 143.93}},
    {{44522.21, 117.10}, {45415.52, 117.45}, {46697.19, 118.93}, {46683.65, 119.53}, {46778.28, 118.04}, {45987.65, 117.70}, {46944.86, 117.35}},
    {{48.44, 31.77}, {37.11, 23.88}, {35.61, 26.02}, {27.98, 26.61}, {42.69, 23.83}, {42.41, 24.30}, {40.67, 18.47}},
};

// Summary table rows: raw Val scores plus the printed improvement columns
// against the covariate-only baseline and against the zero-shot run.
struct SummaryEntry {
    const char* model;
    Cell zs_val, zs_d_base;            // ZS row: Val, delta vs baseline (pct)
    Cell fb_val, fb_d_base, fb_d_zs;   // FBR row: Val, delta vs baseline, delta vs ZS
};

struct SummaryTable {
    const char* name;
    Cell baseline;  // covariate-only regressor Val (delta rows are 0 by definition)
    SummaryEntry entries[kModels];
};

inline const SummaryTable kSummaryDayAhead = {
    "day_ahead vs LGBM(ic27)",
    {35658.52, 100.53},
    {
        {"TimerXL", {76278.90, 162.69}, {-113.91, -61.83}, {33978.45, 94.78}, {4.71, 5.72}, {55.45, 41.74}},
        {"Sundial", {62979.60, 143.60}, {-76.62, -42.84}, {35586.43, 97.09}, {0.20, 3.42}, {43.50, 32.39}},
        {"Chronos2(mv)", {63465.48, 144.60}, {-77.98, -43.84}, {34344.18, 94.90}, {3.69, 5.60}, {45.89, 34.37}},
        {"Chronos2(future)", {52197.23, 137.00}, {-46.38, -36.27}, {35315.01, 97.14}, {0.96, 3.37}, {32.34, 29.09}},
        {"TimesFM", {66423.97, 138.97}, {-86.28, -38.24}, {35411.86, 95.04}, {0.69, 5.46}, {46.69, 31.61}},
        {"Moirai2", {65750.80, 137.58}, {-84.39, -36.85}, {34930.18, 95.73}, {2.04, 4.77}, {46.87, 30.42}},
        {"TiRex", {67450.65, 133.14}, {-89.16, -32.44}, {35543.37, 96.94}, {0.32, 3.57}, {47.30, 27.19}},
    },
};

inline const SummaryTable kSummaryRealTime = {
    "real_time vs LGBM(ic27)",
    {49182.67, 121.63},
    {
        {"TimerXL", {86353.72, 171.63}, {-75.58, -41.11}, {44522.21, 117.10}, {9.48, 3.72}, {48.44, 31.77}},
        {"Sundial", {72219.22, 154.30}, {-46.84, -26.86}, {45415.52, 117.45}, {7.66, 3.44}, {37.11, 23.88}},
        {"Chronos2(mv)", {72517.75, 160.76}, {-47.45, -32.17}, {46697.19, 118.93}, {5.05, 2.22}, {35.61, 26.02}},
        {"Chronos2(future)", {64820.38, 162.88}, {-31.80, -33.91}, {46683.65, 119.53}, {5.08, 1.73}, {27.98, 26.61}},
        {"TimesFM", {81627.66, 154.98}, {-65.97, -27.42}, {46778.28, 118.04}, {4.89, 2.95}, {42.69, 23.84}},
        {"Moirai2", {79852.29, 155.49}, {-62.36, -27.84}, {45987.65, 117.70}, {6.50, 3.23}, {42.41, 24.30}},
        {"TiRex", {79122.98, 143.93}, {-60.88, -18.33}, {46944.86, 117.35}, {4.55, 3.52}, {40.67, 18.47}},
    },
};

inline constexpr int kRealEModels = 6;

inline const SummaryTable kSummaryFr = {
    "FR_24 vs Linear",
    {22.33, 2.79},
    {
        {"TimerXL", {4.41, 1.37}, {80.25, 50.86}, {3.66, 1.26}, {83.61, 54.81}, {16.98, 7.72}},
        {"Sundial", {4.00, 1.29}, {82.09, 53.73}, {3.45, 1.20}, {84.56, 56.96}, {13.75, 6.74}},
        {"Chronos2", {3.61, 1.23}, {83.83, 55.89}, {2.90, 1.11}, {87.01, 60.19}, {19.53, 9.63}},
        {"TiRex", {3.76, 1.24}, {83.16, 55.53}, {3.15, 1.14}, {85.90, 59.11}, {16.24, 8.58}},
        {"Moirai2", {3.81, 1.25}, {82.94, 55.17}, {3.21, 1.16}, {85.63, 58.39}, {15.63, 7.86}},
        {"TimesFM", {3.723, 1.239}, {83.33, 55.55}, {3.001, 1.116}, {86.56, 59.98}, {19.40, 9.95}},
        {"", {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
    },
};

inline const SummaryTable kSummaryDe = {
    "DE_24 vs Linear",
    {13.63, 2.55},
    {
        {"TimerXL", {3.00, 1.21}, {77.99, 52.48}, {1.85, 0.95}, {86.43, 62.69}, {38.40, 21.36}},
        {"Sundial", {4.23, 1.42}, {68.96, 44.23}, {2.32, 1.09}, {82.98, 57.18}, {45.12, 23.25}},
        {"Chronos2", {2.28, 1.03}, {83.28, 59.55}, {1.49, 0.87}, {89.07, 65.83}, {34.55, 15.69}},
        {"TiRex", {2.31, 1.05}, {83.06, 58.76}, {1.63, 0.90}, {88.05, 64.65}, {29.51, 13.87}},
        {"Moirai2", {2.30, 1.07}, {83.13, 57.96}, {1.53, 0.88}, {88.78, 65.44}, {33.77, 17.16}},
        {"TimesFM", {2.908, 1.188}, {78.67, 53.34}, {1.810, 0.953}, {86.72, 62.57}, {37.75, 19.76}},
        {"", {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
    },
};

}  // namespace fixtures
