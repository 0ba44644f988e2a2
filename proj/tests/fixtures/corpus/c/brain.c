/* Deliberately tangled: long, branchy, deeply nested, many parameters. */
int tangle(int a, int b, int c, int d, int e, int f) {
    int s = 0;
    if (a) {
        if (b) {
            if (c) {
                if (d) {
                    s = 1;
                }
            }
        }
    }
    if (e) s = 2;
    if (f) s = 3;
    if (a) s = 4;
    if (b) s = 5;
    if (c) s = 6;
    if (d) s = 7;
    s = s + 101;
    s = s + 102;
    s = s + 103;
    s = s + 104;
    s = s + 105;
    s = s + 106;
    s = s + 107;
    s = s + 108;
    s = s + 109;
    s = s + 110;
    s = s + 111;
    s = s + 112;
    s = s + 113;
    s = s + 114;
    s = s + 115;
    s = s + 116;
    s = s + 117;
    s = s + 118;
    s = s + 119;
    s = s + 120;
    s = s + 121;
    s = s + 122;
    s = s + 123;
    s = s + 124;
    s = s + 125;
    s = s + 126;
    s = s + 127;
    s = s + 128;
    s = s + 129;
    s = s + 130;
    s = s + 131;
    s = s + 132;
    s = s + 133;
    s = s + 134;
    s = s + 135;
    s = s + 136;
    s = s + 137;
    s = s + 138;
    s = s + 139;
    s = s + 140;
    s = s + 141;
    s = s + 142;
    s = s + 143;
    s = s + 144;
    s = s + 145;
    s = s + 146;
    s = s + 147;
    s = s + 148;
    s = s + 149;
    s = s + 150;
    s = s + 151;
    s = s + 152;
    s = s + 153;
    s = s + 154;
    s = s + 155;
    s = s + 156;
    return s;
}
