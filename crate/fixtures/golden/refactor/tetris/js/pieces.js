var I = [[1, 1, 1, 1]];
var O = [[1, 1], [1, 1]];
var names = ["I", "O"];
export {names};
