function hint() {
  guesses++;
  return pick(1).charAt(0);
}

function reveal(word) {
  shown = word.charAt(0) + new Array(word.length).join('_');
}
