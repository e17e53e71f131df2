def repeat(word, times):
    # join copies together
    out = ""
    for n in range(times):
        out += word
    return out


print(repeat("ab", 3))
print(repeat("x", 0))
print(repeat("z", 1))
