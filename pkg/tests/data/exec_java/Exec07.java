class Exec07 {
    static int fold(int[] items) {
        int acc = 0;
        for (int item : items) {
            if (item < 0) {
                acc -= item;
            } else {
                acc += item;
            }
        }
        return acc;
    }

    public static void main(String[] args) {
        int[] row = {3, -2, 5, -1};
        System.out.println(fold(row));
        System.out.println(fold(new int[0]));
        System.out.println(row.length);
    }
}
