import {Board, EMPTY} from "./board.js";
import {names} from "./pieces.js";
import _ from "lodash";
function Game() {
  this.board = new Board(10, 20);
}
Game.prototype.describe = function () {
  return this.board.size() + " " + _.join(names, ",") + " " + EMPTY;
};
export {Game};
