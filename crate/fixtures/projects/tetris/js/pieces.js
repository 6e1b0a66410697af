define(function() {
  return {
    I: [[1, 1, 1, 1]],
    O: [[1, 1], [1, 1]],
    names: ['I', 'O']
  };
});
