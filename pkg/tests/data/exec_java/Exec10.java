class Exec10 {
    static int clamp(int v, int low, int high) {
        if (v < low) {
            return low;
        } else {
            if (v > high) {
                return high;
            }
        }
        return v;
    }

    public static void main(String[] args) {
        int total = 0;
        total += clamp(12, 0, 10);
        total += clamp(-3, 0, 10);
        total += clamp(5, 0, 10);
        System.out.println(total);
        System.out.println(clamp(7, 1, 6));
    }
}
